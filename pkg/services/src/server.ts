/** Single-process HTTP server exposing the three model routes:
 *
 *   POST /classify             {language, code} -> {prob_human, prob_llm}
 *   POST /predict_identifiers  {code, k}        -> {candidates: [...]}
 *   POST /embed                {token}          -> {vector: [...]}
 *
 * Responses are deterministic; malformed requests get a 400 with a
 * diagnostic body. Zero runtime dependencies.
 */

import * as http from "node:http";

import { classify } from "./classifier";
import { EMBED_DIMENSION, embed } from "./embedder";
import { hasMask, predictIdentifiers } from "./predictor";

type Json = Record<string, unknown>;

function badRequest(res: http.ServerResponse, message: string): void {
  sendJson(res, 400, { error: message });
}

function sendJson(res: http.ServerResponse, status: number, body: Json): void {
  const text = JSON.stringify(body);
  res.writeHead(status, {
    "Content-Type": "application/json",
    "Content-Length": Buffer.byteLength(text),
  });
  res.end(text);
}

function readBody(req: http.IncomingMessage): Promise<string> {
  return new Promise((resolve, reject) => {
    const chunks: Buffer[] = [];
    req.on("data", (chunk) => chunks.push(chunk));
    req.on("end", () => resolve(Buffer.concat(chunks).toString("utf-8")));
    req.on("error", reject);
  });
}

function handleClassify(doc: Json, res: http.ServerResponse): void {
  const language = doc["language"];
  const code = doc["code"];
  if (language !== "java" && language !== "python") {
    return badRequest(res, "language must be 'java' or 'python'");
  }
  if (typeof code !== "string") {
    return badRequest(res, "code must be a string");
  }
  const verdict = classify(language, code);
  sendJson(res, 200, { prob_human: verdict.prob_human, prob_llm: verdict.prob_llm });
}

function handlePredict(doc: Json, res: http.ServerResponse): void {
  const code = doc["code"];
  const k = doc["k"];
  if (typeof code !== "string") {
    return badRequest(res, "code must be a string");
  }
  if (typeof k !== "number" || !Number.isInteger(k) || k < 1) {
    return badRequest(res, "k must be a positive integer");
  }
  if (!hasMask(code)) {
    return badRequest(res, "code must contain the <extra_id_0> mask");
  }
  sendJson(res, 200, { candidates: predictIdentifiers(code, k) });
}

function handleEmbed(doc: Json, res: http.ServerResponse): void {
  const token = doc["token"];
  if (typeof token !== "string" || token.length === 0) {
    return badRequest(res, "token must be a non-empty string");
  }
  sendJson(res, 200, { vector: embed(token) });
}

export function createServer(): http.Server {
  return http.createServer(async (req, res) => {
    if (req.method !== "POST") {
      return sendJson(res, 404, { error: "POST only" });
    }
    let doc: Json;
    try {
      const body = await readBody(req);
      doc = JSON.parse(body) as Json;
      if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
        throw new Error("not an object");
      }
    } catch {
      return badRequest(res, "request body must be a JSON object");
    }
    try {
      switch (req.url) {
        case "/classify":
          return handleClassify(doc, res);
        case "/predict_identifiers":
          return handlePredict(doc, res);
        case "/embed":
          return handleEmbed(doc, res);
        default:
          return sendJson(res, 404, { error: `no route ${req.url}` });
      }
    } catch (err) {
      return sendJson(res, 500, { error: String(err) });
    }
  });
}

export const dimension = EMBED_DIMENSION;

if (require.main === module) {
  const port = Number(process.env.PORT ?? 8731);
  const server = createServer();
  server.listen(port, () => {
    console.error(`model services listening on :${port}`);
  });
}
