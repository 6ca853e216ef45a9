/** Spawn a real service instance for the UI tests to talk to. */

import { type ChildProcess, spawn } from "node:child_process";

export interface ServiceHandle {
  baseUrl: string;
  stop: () => void;
}

export async function startService(): Promise<ServiceHandle> {
  const port = 18000 + Math.floor(Math.random() * 20000);
  const child: ChildProcess = spawn(
    "qgamble",
    ["serve", "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let stderr = "";
  child.stderr?.on("data", (chunk) => (stderr += chunk));
  const baseUrl = `http://127.0.0.1:${port}`;

  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`service exited early: ${stderr}`);
    }
    try {
      const response = await fetch(
        `${baseUrl}/analysis/distribution?epsilon=0&eta=0`,
      );
      if (response.ok) {
        return { baseUrl, stop: () => child.kill() };
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  child.kill();
  throw new Error(`service did not come up on ${baseUrl}: ${stderr}`);
}
