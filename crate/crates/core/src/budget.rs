//! Explicit work budgets. Exhaustive operations take a [`Budget`] and fail
//! with a typed error instead of silently truncating when the requested
//! instance is too large.

use serde::Serialize;

/// Budgets for exhaustive computation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Budget {
    /// Maximum number of words an enumeration or sweep may visit (q^n).
    pub enumeration: u64,
    /// Maximum number of vertices for the exact independence-number solver.
    pub graph_vertices: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 1 << 24,
            graph_vertices: 1 << 10,
        }
    }
}

impl Budget {
    /// Default budget with the enumeration limit taken from the
    /// `READCODE_BUDGET` environment variable when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(s) = std::env::var("READCODE_BUDGET") {
            if let Ok(v) = s.trim().parse::<u64>() {
                b.enumeration = v;
            }
        }
        b
    }

    /// q^n if it fits the enumeration budget, otherwise `Err(required)`.
    pub fn check_enumeration(&self, q: u32, n: usize) -> Result<u64, u64> {
        let mut total: u64 = 1;
        for _ in 0..n {
            total = match total.checked_mul(q as u64) {
                Some(v) => v,
                None => return Err(u64::MAX),
            };
            if total > self.enumeration {
                // Keep multiplying is pointless; report the true requirement
                // when it fits in u64, saturating otherwise.
                let mut req: u64 = 1;
                for _ in 0..n {
                    req = match req.checked_mul(q as u64) {
                        Some(v) => v,
                        None => return Err(u64::MAX),
                    };
                }
                return Err(req);
            }
        }
        Ok(total)
    }
}
