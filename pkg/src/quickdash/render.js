/* Chart-IR renderer: reads the inline IR document and draws every section
 * as a CSS grid of SVG charts. No external dependencies. */
(function () {
  "use strict";

  var SVG_NS = "http://www.w3.org/2000/svg";
  var PALETTE = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
                 "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac"];
  var MARGIN = { top: 8, right: 12, bottom: 34, left: 48 };

  function el(tag, cls) {
    var node = document.createElement(tag);
    if (cls) node.className = cls;
    return node;
  }

  function svgEl(tag, attrs) {
    var node = document.createElementNS(SVG_NS, tag);
    for (var k in attrs) node.setAttribute(k, attrs[k]);
    return node;
  }

  function findEncoding(chart, channel) {
    for (var i = 0; i < chart.encodings.length; i++) {
      if (chart.encodings[i].channel === channel) return chart.encodings[i];
    }
    return null;
  }

  function columnIndex(data, field) {
    return data.fields.indexOf(field);
  }

  function distinct(values) {
    var seen = {}, out = [];
    for (var i = 0; i < values.length; i++) {
      var key = String(values[i]);
      if (!seen[key]) { seen[key] = true; out.push(values[i]); }
    }
    return out;
  }

  /* Normalize a chart into faceted panels of named point series. */
  function extractPanels(chart) {
    var data = chart.data;
    var x = findEncoding(chart, "x");
    var color = findEncoding(chart, "color");
    var facet = findEncoding(chart, "column-facet");
    var xIdx = x ? columnIndex(data, x.field) : -1;
    var facetIdx = facet ? columnIndex(data, facet.field) : -1;
    var metricBase = data.fields.length;

    var facetValues = facetIdx >= 0
      ? distinct(data.rows.map(function (r) { return r[facetIdx]; }))
      : [null];

    return facetValues.map(function (fv) {
      var rows = facetIdx >= 0
        ? data.rows.filter(function (r) { return r[facetIdx] === fv; })
        : data.rows;
      var series;
      if (color && color.metrics) {
        series = data.metrics.map(function (label, mi) {
          return {
            name: label,
            points: rows.map(function (r) { return { x: r[xIdx], y: r[metricBase + mi] }; })
          };
        });
      } else if (color && color.field) {
        var cIdx = columnIndex(data, color.field);
        series = distinct(data.rows.map(function (r) { return r[cIdx]; })).map(function (cv) {
          return {
            name: String(cv),
            points: rows.filter(function (r) { return r[cIdx] === cv; })
              .map(function (r) { return { x: r[xIdx], y: r[metricBase] }; })
          };
        });
      } else {
        series = [{
          name: data.metrics[0],
          points: rows.map(function (r) { return { x: r[xIdx], y: r[metricBase] }; })
        }];
      }
      return { facetValue: fv, series: series };
    });
  }

  function niceTicks(lo, hi, count) {
    var span = hi - lo;
    if (span <= 0) return [lo];
    var step = Math.pow(10, Math.floor(Math.log10(span / count)));
    var err = (span / count) / step;
    if (err >= 7.5) step *= 10;
    else if (err >= 3.5) step *= 5;
    else if (err >= 1.5) step *= 2;
    var ticks = [];
    for (var v = Math.ceil(lo / step) * step; v <= hi + 1e-9; v += step) {
      ticks.push(Math.abs(v) < 1e-12 ? 0 : v);
    }
    return ticks;
  }

  function formatNumber(v) {
    if (Math.abs(v) >= 1e6) return (v / 1e6).toFixed(1).replace(/\.0$/, "") + "M";
    if (Math.abs(v) >= 1e3) return (v / 1e3).toFixed(1).replace(/\.0$/, "") + "k";
    if (Number.isInteger(v)) return String(v);
    return v.toFixed(2).replace(/0+$/, "").replace(/\.$/, "");
  }

  function formatTime(iso, unit) {
    if (unit === "year") return iso.slice(0, 4);
    if (unit === "month") return iso.slice(0, 7);
    if (unit === "hour") return iso.slice(5, 13).replace("T", " ") + "h";
    return iso.slice(0, 10);
  }

  function xLabel(value, xEnc) {
    if (xEnc && xEnc.fieldType === "temporal") {
      return formatTime(String(value), xEnc.timeUnit || "day");
    }
    return String(value);
  }

  function renderKpi(chart) {
    var cell = el("div");
    var title = el("p", "chart-title");
    title.textContent = chart.title;
    cell.appendChild(title);
    var base = chart.data.fields.length;
    chart.data.metrics.forEach(function (label, i) {
      var value = chart.data.rows.length ? chart.data.rows[0][base + i] : 0;
      var v = el("div", "kpi-value");
      v.textContent = formatNumber(value);
      var l = el("div", "kpi-label");
      l.textContent = label;
      cell.appendChild(v);
      cell.appendChild(l);
    });
    return cell;
  }

  function drawAxes(svg, plot, yDomain, xEnc) {
    var axis = svgEl("g", { "class": "axis" });
    var ticks = niceTicks(yDomain[0], yDomain[1], 4);
    ticks.forEach(function (t) {
      var y = plot.y(t);
      axis.appendChild(svgEl("line", { x1: plot.left, x2: plot.right, y1: y, y2: y }));
      var label = svgEl("text", { x: plot.left - 6, y: y + 3, "text-anchor": "end" });
      label.textContent = formatNumber(t);
      axis.appendChild(label);
    });
    axis.appendChild(svgEl("line", {
      x1: plot.left, x2: plot.right, y1: plot.y(0), y2: plot.y(0), stroke: "#9aa0ae"
    }));
    svg.appendChild(axis);
  }

  function drawXLabels(svg, plot, entries, xEnc) {
    var step = Math.max(1, Math.ceil(entries.length / 7));
    var g = svgEl("g", { "class": "axis" });
    entries.forEach(function (entry, i) {
      if (i % step !== 0 && i !== entries.length - 1) return;
      var label = svgEl("text", {
        x: entry.px, y: plot.bottom + 14, "text-anchor": "middle"
      });
      var text = xLabel(entry.value, xEnc);
      label.textContent = text.length > 12 ? text.slice(0, 11) + "…" : text;
      g.appendChild(label);
    });
    svg.appendChild(g);
  }

  function renderPanel(svg, plot, panel, chart, colorOf) {
    var xEnc = findEncoding(chart, "x");
    var yEnc = findEncoding(chart, "y");
    var yDomain = yEnc.domain;
    plot.y = function (v) {
      var t = (v - yDomain[0]) / (yDomain[1] - yDomain[0] || 1);
      return plot.bottom - t * (plot.bottom - plot.top);
    };
    drawAxes(svg, plot, yDomain, xEnc);

    var lineMark = chart.mark === "line" || chart.mark === "multi_line";
    var xValues = distinct(panel.series.reduce(function (acc, s) {
      return acc.concat(s.points.map(function (p) { return p.x; }));
    }, []));

    if (lineMark && xEnc.fieldType === "temporal") {
      var times = xValues.map(function (v) { return Date.parse(v); });
      var tmin = Math.min.apply(null, times);
      var tmax = Math.max.apply(null, times);
      var px = function (v) {
        var t = tmax === tmin ? 0.5 : (Date.parse(v) - tmin) / (tmax - tmin);
        return plot.left + t * (plot.right - plot.left);
      };
      panel.series.forEach(function (s) {
        var d = s.points.map(function (p, i) {
          return (i ? "L" : "M") + px(p.x).toFixed(1) + "," + plot.y(p.y).toFixed(1);
        }).join("");
        if (d) {
          svg.appendChild(svgEl("path", {
            d: d, fill: "none", stroke: colorOf(s.name), "stroke-width": 1.8
          }));
        }
        s.points.forEach(function (p) {
          svg.appendChild(svgEl("circle", {
            cx: px(p.x), cy: plot.y(p.y), r: 2, fill: colorOf(s.name)
          }));
        });
      });
      drawXLabels(svg, plot, xValues.map(function (v) { return { value: v, px: px(v) }; }), xEnc);
    } else {
      // band scale: bars (or lines over a non-temporal x)
      var band = (plot.right - plot.left) / Math.max(xValues.length, 1);
      var center = function (i) { return plot.left + band * (i + 0.5); };
      var xPos = {};
      xValues.forEach(function (v, i) { xPos[String(v)] = i; });
      if (lineMark) {
        panel.series.forEach(function (s) {
          var d = s.points.map(function (p, i) {
            return (i ? "L" : "M") + center(xPos[String(p.x)]).toFixed(1) + "," +
              plot.y(p.y).toFixed(1);
          }).join("");
          if (d) {
            svg.appendChild(svgEl("path", {
              d: d, fill: "none", stroke: colorOf(s.name), "stroke-width": 1.8
            }));
          }
        });
      } else {
        var n = panel.series.length;
        var inner = band * 0.8 / n;
        panel.series.forEach(function (s, si) {
          s.points.forEach(function (p) {
            var i = xPos[String(p.x)];
            var x0 = plot.left + band * i + band * 0.1 + inner * si;
            var y0 = plot.y(Math.max(0, p.y));
            var h = Math.abs(plot.y(p.y) - plot.y(0));
            svg.appendChild(svgEl("rect", {
              x: x0.toFixed(1), y: y0.toFixed(1),
              width: Math.max(inner - 1, 1).toFixed(1), height: h.toFixed(1),
              fill: colorOf(s.name)
            }));
          });
        });
      }
      drawXLabels(svg, plot, xValues.map(function (v, i) {
        return { value: v, px: center(i) };
      }), xEnc);
    }
  }

  function renderChart(chart) {
    if (chart.mark === "kpi_card") return renderKpi(chart);
    var cell = el("div");
    var title = el("p", "chart-title");
    title.textContent = chart.title;
    cell.appendChild(title);

    var panels = extractPanels(chart);
    var width = chart.width - 26;
    var height = chart.height - 60;
    var panelWidth = Math.floor(width / panels.length);
    var svg = svgEl("svg", { width: width, height: height });

    var names = panels[0].series.map(function (s) { return s.name; });
    var colorOf = function (name) {
      var i = names.indexOf(name);
      return PALETTE[(i < 0 ? 0 : i) % PALETTE.length];
    };
    var facet = findEncoding(chart, "column-facet");

    panels.forEach(function (panel, pi) {
      var g = svgEl("g", { transform: "translate(" + (pi * panelWidth) + ",0)" });
      var plot = {
        left: MARGIN.left, right: panelWidth - MARGIN.right,
        top: MARGIN.top + (facet ? 14 : 0), bottom: height - MARGIN.bottom
      };
      if (facet) {
        var head = svgEl("text", {
          x: (plot.left + plot.right) / 2, y: 12, "text-anchor": "middle",
          "font-weight": "600"
        });
        head.textContent = facet.field + ": " + xLabel(panel.facetValue, facet);
        g.appendChild(head);
      }
      renderPanel(g, plot, panel, chart, colorOf);
      svg.appendChild(g);
    });
    cell.appendChild(svg);

    if (names.length > 1) {
      var legend = el("div", "legend");
      names.forEach(function (name) {
        var item = el("span");
        var swatch = el("span", "swatch");
        swatch.style.background = colorOf(name);
        item.appendChild(swatch);
        item.appendChild(document.createTextNode(name));
        legend.appendChild(item);
      });
      cell.appendChild(legend);
    }
    var dropped = chart.data.droppedRows + chart.data.droppedCategories;
    if (dropped > 0) {
      var note = el("p", "chart-note");
      note.textContent = (chart.data.droppedRows ? chart.data.droppedRows + " rows with null keys dropped. " : "") +
        (chart.data.droppedCategories ? "showing largest " + chart.data.rows.length + " categories (" + chart.data.droppedCategories + " hidden)." : "");
      cell.appendChild(note);
    }
    return cell;
  }

  function render() {
    var ir = JSON.parse(document.getElementById("dashboard-ir").textContent);
    var root = document.getElementById("dashboard");
    var h1 = el("h1");
    h1.textContent = ir.title;
    root.appendChild(h1);
    ir.sections.forEach(function (section) {
      var sec = el("section", "dash-section");
      var h2 = el("h2");
      h2.textContent = section.title;
      sec.appendChild(h2);
      var grid = el("div", "dash-grid");
      grid.style.gridTemplateColumns = "repeat(" + section.cols + ", 1fr)";
      section.cells.forEach(function (cell) {
        var box = el("div", "dash-cell");
        box.style.gridRow = String(cell.row + 1);
        box.style.gridColumn = String(cell.col + 1);
        box.appendChild(renderChart(ir.charts[cell.chart]));
        grid.appendChild(box);
      });
      sec.appendChild(grid);
      root.appendChild(sec);
    });
  }

  render();
})();
