/** Thin fetch wrappers over the documented service endpoints. */

import type { IRDoc, SchemaDoc, SkeletonDoc, SpecDoc, ValidationReportDoc } from "./types.js";

export class CompileRejected extends Error {
  constructor(
    public readonly status: number,
    public readonly report: ValidationReportDoc | { error: { message: string } },
  ) {
    super(`compile rejected with status ${status}`);
  }
}

export async function getSchema(base = ""): Promise<SchemaDoc> {
  const response = await fetch(`${base}/schema`);
  if (!response.ok) throw new Error(`GET /schema failed: ${response.status}`);
  return (await response.json()) as SchemaDoc;
}

export async function postPreview(spec: SpecDoc, base = ""): Promise<SkeletonDoc> {
  const response = await fetch(`${base}/preview`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(spec),
  });
  if (!response.ok) throw new Error(`POST /preview failed: ${response.status}`);
  return (await response.json()) as SkeletonDoc;
}

export async function postCompile(spec: SpecDoc, base = ""): Promise<IRDoc> {
  const response = await fetch(`${base}/compile`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(spec),
  });
  if (response.status === 422 || response.status === 400) {
    throw new CompileRejected(response.status, await response.json());
  }
  if (!response.ok) throw new Error(`POST /compile failed: ${response.status}`);
  return (await response.json()) as IRDoc;
}
