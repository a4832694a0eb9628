use super::central::CentralExtSpec;
use crate::error::Result;
use crate::words::{letter, reduce_letters, Letter, RleWord, Sign};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BfsConfig {
    pub radius: usize,
    pub max_states: usize,
}

impl Default for BfsConfig {
    fn default() -> Self {
        BfsConfig { radius: 8, max_states: 100_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormResult {
    Exact(usize),
    /// Every element of norm below `lower_bound` was enumerated and none
    /// equals the target.
    ExceedsCap {
        lower_bound: usize,
        states: usize,
    },
}

impl NormResult {
    pub fn lower_bound(&self) -> usize {
        match *self {
            NormResult::Exact(n) => n,
            NormResult::ExceedsCap { lower_bound, .. } => lower_bound,
        }
    }
}

impl fmt::Display for NormResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormResult::Exact(n) => write!(f, "{n} [computed]"),
            NormResult::ExceedsCap { lower_bound, states } => {
                write!(f, ">= {lower_bound} [cap-limited, {states} states]")
            }
        }
    }
}

/// Ball enumeration in the Cayley graph, one element per equality class.
pub struct Ball<'a> {
    spec: &'a CentralExtSpec,
    buckets: HashMap<Vec<i64>, Vec<Vec<Letter>>>,
    pub levels: Vec<Vec<Vec<Letter>>>,
    pub states: usize,
}

impl<'a> Ball<'a> {
    pub fn new(spec: &'a CentralExtSpec) -> Ball<'a> {
        let mut b = Ball { spec, buckets: HashMap::new(), levels: vec![vec![Vec::new()]], states: 1 };
        b.buckets.insert(spec.bucket_key(&[]), vec![Vec::new()]);
        b
    }

    /// A stored representative equal to `w`, if any.
    pub fn find(&self, w: &[Letter]) -> Result<Option<&[Letter]>> {
        if let Some(reps) = self.buckets.get(&self.spec.bucket_key(w)) {
            for r in reps {
                if self.spec.equal_letters(w, r)? {
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }

    /// Enumerates the next sphere, stopping early once `max_states` is hit.
    /// Returns `false` if the sphere is incomplete.
    pub fn grow(&mut self, max_states: usize) -> Result<bool> {
        let gens: Vec<Letter> =
            (0..self.spec.alphabet.len()).flat_map(|s| [letter(s, Sign::Pos), letter(s, Sign::Neg)]).collect();
        let prev = self.levels.last().cloned().unwrap_or_default();
        let mut next = Vec::new();
        for g in &prev {
            for &l in &gens {
                if g.last() == Some(&-l) {
                    continue;
                }
                let mut c = g.clone();
                c.push(l);
                let c = reduce_letters(&c);
                if self.find(&c)?.is_some() {
                    continue;
                }
                if self.states >= max_states {
                    self.levels.push(next);
                    return Ok(false);
                }
                self.buckets.entry(self.spec.bucket_key(&c)).or_default().push(c.clone());
                self.states += 1;
                next.push(c);
            }
        }
        self.levels.push(next);
        Ok(true)
    }
}

/// The word norm of `w`, or an honest lower bound when the radius or state
/// cap is reached first.
pub fn bfs_norm(w: &RleWord, spec: &CentralExtSpec, cfg: &BfsConfig) -> Result<NormResult> {
    bfs_norm_letters(&w.letters()?, spec, cfg)
}

pub fn bfs_norm_letters(w: &[Letter], spec: &CentralExtSpec, cfg: &BfsConfig) -> Result<NormResult> {
    let target = reduce_letters(w);
    if spec.decide_letters(&target)?.trivial {
        return Ok(NormResult::Exact(0));
    }
    let key = spec.bucket_key(&target);
    let mut ball = Ball::new(spec);
    for r in 1..=cfg.radius {
        let complete = ball.grow(cfg.max_states)?;
        for c in ball.levels.last().expect("level") {
            if spec.bucket_key(c) == key && spec.equal_letters(c, &target)? {
                return Ok(NormResult::Exact(r));
            }
        }
        if !complete {
            return Ok(NormResult::ExceedsCap { lower_bound: r, states: ball.states });
        }
        if ball.levels.last().is_some_and(Vec::is_empty) {
            break;
        }
    }
    Ok(NormResult::ExceedsCap { lower_bound: ball.levels.len(), states: ball.states })
}
