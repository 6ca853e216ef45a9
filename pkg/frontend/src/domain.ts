/** Parameter domains per role and the clamps the controls enforce.
 *
 * The UI never evaluates protocol math; these ranges only keep slider
 * input inside what the service accepts, so the service never sees a
 * domain error from the table.
 */

import type { Role } from "./api.js";

export interface ParameterDomain {
  name: "epsilon" | "eta";
  min: number;
  max: number;
}

export const PARAMETER_DOMAINS: Record<Role, ParameterDomain> = {
  alice: { name: "epsilon", min: 0.0, max: 0.5 },
  bob: { name: "eta", min: 0.0, max: 1.0 },
};

/** Clamp an arbitrary slider value into the role's legal domain. */
export function clampParameter(role: Role, value: number): number {
  const domain = PARAMETER_DOMAINS[role];
  if (!Number.isFinite(value)) return domain.min;
  return Math.min(domain.max, Math.max(domain.min, value));
}

/** Map a normalized slider position in [0, 1] onto the role's domain. */
export function sliderToParameter(role: Role, position: number): number {
  const domain = PARAMETER_DOMAINS[role];
  if (!Number.isFinite(position)) return domain.min;
  const clamped = Math.min(1, Math.max(0, position));
  return domain.min + clamped * (domain.max - domain.min);
}

/** Client-side check of the punishment; non-null message blocks the request. */
export function validatePunishment(R: number): string | null {
  if (!Number.isFinite(R) || R <= 0) {
    return "R must be a positive number of coins";
  }
  return null;
}

/** Python-style float formatting, used to verify round commitments. */
export function pyFloatRepr(value: number): string {
  if (Number.isInteger(value) && Math.abs(value) < 1e16) {
    return value.toFixed(1);
  }
  return String(value);
}
