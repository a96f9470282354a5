//! Size limits for the exponential (enumeration-based) routines.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Max n for weak/strong density and WD-subgraph enumeration.
    pub density: usize,
    /// Max n for simple-cycle enumeration.
    pub cycles: usize,
    /// Max n for brute-force FVS/PFDS.
    pub brute: usize,
    /// Max n for brute-force MC2PT and 2-pseudotree enumeration.
    pub mc2pt: usize,
    /// Max n for tight-set and supermodularity checks.
    pub tight: usize,
    /// Cutting-plane rounds before giving up.
    pub cut_rounds: usize,
    /// Max n for exhaustive vertex enumeration.
    pub vertex_enum: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { density: 18, cycles: 12, brute: 20, mc2pt: 12, tight: 12, cut_rounds: 10_000, vertex_enum: 5 }
    }
}

impl Caps {
    /// Applies overrides written as `key=value` pairs separated by commas,
    /// e.g. `density=14,cycles=10`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, String> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| format!("expected key=value, got {item:?}"))?;
            let value: usize = value.trim().parse().map_err(|_| format!("bad number in {item:?}"))?;
            let slot = match key.trim() {
                "density" => &mut self.density,
                "cycles" => &mut self.cycles,
                "brute" => &mut self.brute,
                "mc2pt" => &mut self.mc2pt,
                "tight" => &mut self.tight,
                "cut_rounds" => &mut self.cut_rounds,
                "vertex_enum" => &mut self.vertex_enum,
                other => return Err(format!("unknown cap {other:?}")),
            };
            *slot = value;
        }
        Ok(self)
    }
}
