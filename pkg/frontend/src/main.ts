import { boot } from "./ui.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

boot(root).catch((error) => {
  root.innerHTML = "";
  const message = document.createElement("p");
  message.className = "inline-error";
  message.textContent = `could not reach the quickdash service: ${String(error)}`;
  root.appendChild(message);
});
