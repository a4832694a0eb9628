use super::Dim;
use crate::error::{Error, Result};
use std::fmt;

/// The case split that builds `G ⩾ H` with prescribed dimensions `(k, m, n)`
/// from one instance of the central-extension construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub k: Dim,
    pub m: Dim,
    pub n: Dim,
    /// Parameters handed to the construction: `(m − 3, n − 2)`.
    pub base: (Dim, Dim),
    pub caveats: Vec<String>,
}

fn minus(d: Dim, c: u64) -> Dim {
    match d {
        Dim::Finite(v) => Dim::Finite(v - c),
        Dim::Infinite => Dim::Infinite,
    }
}

fn le(a: Dim, b: Dim) -> bool {
    !b.lt(a)
}

pub fn plan_construction(k: Dim, m: Dim, n: Dim) -> Result<Recipe> {
    if !le(Dim::Finite(4), k) || !le(k, m) || !le(m, n) {
        return Err(Error::InvalidConfig(format!("need 4 <= k <= m <= n, got k={k} m={m} n={n}")));
    }
    let base = (minus(m, 3), minus(n, 2));
    let mut caveats = Vec::new();
    if m.is_infinite() {
        caveats.push(
            "m = inf: the base construction is only carried out for a finite first parameter, and m-3 < n-2 fails when both are inf"
                .to_string(),
        );
    }
    if k.is_infinite() {
        caveats.push("k = inf: Z^k is not finitely generated, so G = G1 * Z^k is not finitely generated".to_string());
    }
    Ok(Recipe { k, m, n, base, caveats })
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (bm, bn) = self.base;
        writeln!(f, "plan k={} m={} n={}", self.k, self.m, self.n)?;
        writeln!(f, "step 1: build G0 >= B0 with parameters ({bm}, {bn})")?;
        writeln!(
            f,
            "        asdim G0 in [1,2], asdimAN G0 in [{}, {}], asdimAN B0 in [{}, {}]",
            minus(self.m, 2),
            minus(self.m, 1),
            minus(self.n, 1),
            self.n
        )?;
        writeln!(
            f,
            "step 2: G1 = G0 x Z^2 if asdimAN G0 = {}; G1 = G0 x Z if asdimAN G0 = {}",
            minus(self.m, 2),
            minus(self.m, 1)
        )?;
        writeln!(f, "step 3: G = G1 * Z^{}", self.k)?;
        writeln!(f, "step 4: H = B0 x Z if asdimAN B0 = {}; H = B0 if asdimAN B0 = {}", minus(self.n, 1), self.n)?;
        write!(f, "result: asdim G = {}, asdimAN G = {}, asdimAN H = {}", self.k, self.m, self.n)?;
        for c in &self.caveats {
            write!(f, "\ncaveat: {c}")?;
        }
        Ok(())
    }
}
