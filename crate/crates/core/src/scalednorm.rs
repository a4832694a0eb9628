//! Scaled direct sums `⊕ s_i Z_{ℓ_i}` with exact rational norms.
//!
//! An order of `∞` stands for a `Z` coordinate, so `Z^d × K` fits the same
//! type. Residues are stored in `[0, ℓ)` for finite orders.

use crate::error::{Error, Result};
use crate::families::{block_index, Dim, FamilySpec};
use crate::report::{Report, Status};
use crate::words::{Expr, RleWord};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite(v: u64) -> Order {
        Order::Finite(BigUint::from(v))
    }

    /// `⌊ℓ/2⌋`, the diameter of `Z_ℓ` under its natural norm.
    pub fn diam(&self) -> Option<BigUint> {
        match self {
            Order::Finite(l) => Some(l / 2u32),
            Order::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSum {
    pub orders: Vec<Order>,
    pub scalings: Vec<BigRational>,
}

impl ScaledSum {
    pub fn new(orders: Vec<Order>, scalings: Vec<BigRational>) -> Result<ScaledSum> {
        if orders.len() != scalings.len() {
            return Err(Error::InvalidConfig("one scaling per order is required".into()));
        }
        if orders.iter().any(|o| matches!(o, Order::Finite(l) if l < &BigUint::from(2u32))) {
            return Err(Error::InvalidConfig("finite orders must be at least 2".into()));
        }
        if scalings.iter().any(|s| !s.is_positive()) {
            return Err(Error::InvalidConfig("scalings must be positive".into()));
        }
        Ok(ScaledSum { orders, scalings })
    }

    /// Finite orders and integer scalings.
    pub fn cyclic(orders: &[u64], scalings: &[u64]) -> Result<ScaledSum> {
        ScaledSum::new(
            orders.iter().map(|&l| Order::finite(l)).collect(),
            scalings.iter().map(|&s| BigRational::from_integer(s.into())).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// `s' = ⌈s⌉`.
    pub fn ceiling(&self) -> ScaledSum {
        ScaledSum { orders: self.orders.clone(), scalings: self.scalings.iter().map(|s| s.ceil()).collect() }
    }

    /// The same orders with every scaling set to 1.
    pub fn unscaled(&self) -> ScaledSum {
        ScaledSum { orders: self.orders.clone(), scalings: vec![BigRational::one(); self.len()] }
    }
}

/// A finitely supported element; zero coordinates are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SumElement {
    support: BTreeMap<usize, BigInt>,
}

impl SumElement {
    pub fn identity() -> SumElement {
        SumElement::default()
    }

    /// Reduces each value into `[0, ℓ_i)` and drops zeros.
    pub fn new(group: &ScaledSum, entries: impl IntoIterator<Item = (usize, BigInt)>) -> Result<SumElement> {
        let mut support = BTreeMap::new();
        for (i, v) in entries {
            let order = group.orders.get(i).ok_or(Error::OutOfRange { index: i, bound: group.len() })?;
            let v = match order {
                Order::Finite(l) => v.mod_floor(&BigInt::from(l.clone())),
                Order::Infinite => v,
            };
            let slot: &mut BigInt = support.entry(i).or_default();
            *slot += v;
            if let Order::Finite(l) = order {
                *slot = slot.mod_floor(&BigInt::from(l.clone()));
            }
        }
        support.retain(|_, v| !v.is_zero());
        Ok(SumElement { support })
    }

    pub fn support(&self) -> &BTreeMap<usize, BigInt> {
        &self.support
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.support.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    /// `max supp(g)`, or `None` for the identity.
    pub fn height(&self) -> Option<usize> {
        self.support.keys().next_back().copied()
    }

    pub fn add(&self, other: &SumElement, group: &ScaledSum) -> Result<SumElement> {
        SumElement::new(group, self.support.iter().chain(other.support.iter()).map(|(&i, v)| (i, v.clone())))
    }

    pub fn neg(&self, group: &ScaledSum) -> Result<SumElement> {
        SumElement::new(group, self.support.iter().map(|(&i, v)| (i, -v)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeodesicForm {
    pub coeffs: BTreeMap<usize, BigInt>,
}

/// The representative of `x` in `{−⌊(ℓ−1)/2⌋, …, ⌊ℓ/2⌋}`.
pub fn geodesic_coordinate(x: &BigInt, order: &Order) -> BigInt {
    match order {
        Order::Infinite => x.clone(),
        Order::Finite(l) => {
            let l = BigInt::from(l.clone());
            let r = x.mod_floor(&l);
            if &r * 2 > l {
                r - l
            } else {
                r
            }
        }
    }
}

pub fn geodesic_form(x: &SumElement, group: &ScaledSum) -> GeodesicForm {
    let coeffs = x
        .support
        .iter()
        .map(|(&i, v)| (i, geodesic_coordinate(v, &group.orders[i])))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    GeodesicForm { coeffs }
}

fn abs_rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.abs())
}

/// `Σ s_i |y_i|` over the geodesic form.
pub fn norm_induced(x: &SumElement, group: &ScaledSum) -> BigRational {
    geodesic_form(x, group).coeffs.iter().map(|(&i, y)| &group.scalings[i] * abs_rat(y)).sum()
}

/// `s_h ‖x_h‖` with `h` the height; only for finite orders.
pub fn norm_qu(x: &SumElement, group: &ScaledSum) -> Result<BigRational> {
    if let Some(i) = x.support.keys().find(|&&i| group.orders[i] == Order::Infinite) {
        return Err(Error::Unsupported(format!(
            "quasi-ultranorm with an infinite-order coordinate ({i}) in the support"
        )));
    }
    Ok(match x.height() {
        None => BigRational::zero(),
        Some(h) => &group.scalings[h] * abs_rat(&geodesic_coordinate(&x.get(h), &group.orders[h])),
    })
}

/// Hypotheses under which `‖·‖_s ≤ 2‖·‖^qu`: every order finite, `⌊ℓ_i/2⌋`
/// non-decreasing and `s_{i+1} ≥ 2 s_i ⌊ℓ_i/2⌋`. Nonzero residues have
/// natural norm at least 1, so that condition always holds.
pub fn qu_hypotheses(group: &ScaledSum) -> Report {
    let mut rep = Report::new("quasi-ultranorm hypotheses");
    let inf = group.orders.iter().position(|o| *o == Order::Infinite);
    rep.check("all orders finite", inf.is_none(), inf.map(|i| format!("l_{i} = inf")).unwrap_or_default());
    if inf.is_some() {
        return rep;
    }
    let diams: Vec<BigUint> = group.orders.iter().map(|o| o.diam().expect("finite")).collect();
    let bad = diams.windows(2).position(|w| w[1] < w[0]);
    rep.check("diameters non-decreasing", bad.is_none(), bad.map(|i| format!("drops at i={i}")).unwrap_or_default());
    let two = BigRational::from_integer(2.into());
    let bad = (0..group.len().saturating_sub(1)).find(|&i| {
        group.scalings[i + 1] < &two * &group.scalings[i] * BigRational::from_integer(BigInt::from(diams[i].clone()))
    });
    rep.check(
        "s_{i+1} >= 2 s_i diam(Z_{l_i})",
        bad.is_none(),
        bad.map(|i| {
            format!("fails at i={i}: s_{} = {} < 2*{}*{}", i + 1, group.scalings[i + 1], group.scalings[i], diams[i])
        })
        .unwrap_or_default(),
    );
    rep
}

/// A random element with support drawn from the whole index range.
pub fn random_element(group: &ScaledSum, rng: &mut impl Rng) -> SumElement {
    let mut entries = Vec::new();
    for (i, o) in group.orders.iter().enumerate() {
        if rng.gen_bool(0.5) {
            let v = match o {
                Order::Finite(l) => BigInt::from(BigUint::from(rng.gen::<u64>()) % l),
                Order::Infinite => BigInt::from(rng.gen_range(-1000i64..=1000)),
            };
            entries.push((i, v));
        }
    }
    SumElement::new(group, entries).expect("indices in range")
}

/// Largest order product the two-coordinate search will scan.
const WITNESS_SCAN_LIMIT: u64 = 4_000_000;

/// Exhaustive search over elements supported on two coordinates for
/// `‖g‖_s > 2‖g‖^qu`. Returns the first witness with both norms.
pub fn two_coordinate_witness(group: &ScaledSum) -> Result<Option<(SumElement, BigRational, BigRational)>> {
    let orders: Vec<u64> = group
        .orders
        .iter()
        .map(|o| match o {
            Order::Finite(l) => l.to_u64().ok_or_else(|| Error::TooLarge(format!("order {l}"))),
            Order::Infinite => Err(Error::Unsupported("two-coordinate search needs finite orders".into())),
        })
        .collect::<Result<_>>()?;
    let two = BigRational::from_integer(2.into());
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            if orders[i].saturating_mul(orders[j]) > WITNESS_SCAN_LIMIT {
                return Err(Error::TooLarge(format!("Z_{} x Z_{} exceeds the scan limit", orders[i], orders[j])));
            }
            for xi in 1..orders[i] {
                for xj in 1..orders[j] {
                    let g = SumElement::new(group, [(i, BigInt::from(xi)), (j, BigInt::from(xj))])?;
                    let (n, qu) = (norm_induced(&g, group), norm_qu(&g, group)?);
                    if n > &two * &qu {
                        return Ok(Some((g, n, qu)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Samples `samples` elements and checks, exactly:
/// `‖g‖^qu ≤ ‖g‖_s ≤ 2‖g‖^qu` (only when the hypotheses hold),
/// `‖g‖_s ≤ ‖g‖_{⌈s⌉} ≤ (1 + 1/ε)‖g‖_s` with `ε = min s_i`, and
/// `min s · ‖g‖ ≤ ‖g‖_s ≤ max s · ‖g‖` against the unscaled norm.
pub fn check_norm_equivalences(group: &ScaledSum, samples: usize, seed: u64) -> Report {
    let mut rep = Report::new(format!("norm equivalences over {samples} samples"));
    let finite = group.orders.iter().all(|o| *o != Order::Infinite);
    let hyp = qu_hypotheses(group);
    let hyp_ok = hyp.all_pass();
    rep.extend(hyp);
    if group.is_empty() {
        rep.pass("identity only", "empty index set");
        return rep;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = group.scalings.iter().min().expect("nonempty").clone();
    let smax = group.scalings.iter().max().expect("nonempty").clone();
    let ceil = group.ceiling();
    let plain = group.unscaled();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let (mut lower, mut upper, mut ceil_bad, mut bl_bad) = (None, None, None, None);
    let mut worst = BigRational::zero();
    let mut elems = vec![SumElement::identity()];
    elems.extend((1..samples).map(|_| random_element(group, &mut rng)));
    for (t, g) in elems.iter().enumerate() {
        let n = norm_induced(g, group);
        if finite {
            let qu = norm_qu(g, group).expect("finite orders");
            if qu > n {
                lower.get_or_insert(t);
            }
            if hyp_ok && n > &two * &qu {
                upper.get_or_insert(t);
            }
            if !qu.is_zero() && &n / &qu > worst {
                worst = &n / &qu;
            }
        }
        let nc = norm_induced(g, &ceil);
        if n > nc || nc > (&one + &one / &eps) * &n {
            ceil_bad.get_or_insert(t);
        }
        let np = norm_induced(g, &plain);
        if &eps * &np > n || n > &smax * &np {
            bl_bad.get_or_insert(t);
        }
    }
    let at = |v: Option<usize>| v.map(|t| format!("sample {t}")).unwrap_or_default();
    if finite {
        rep.check("qu <= s", lower.is_none(), at(lower));
        if hyp_ok {
            let detail = upper.map(|t| format!("sample {t}")).unwrap_or(format!("max ratio {worst}"));
            rep.check("s <= 2 qu", upper.is_none(), detail);
        } else {
            rep.push("s <= 2 qu", Status::Inconclusive, "hypotheses fail; see two-coordinate search", None);
            match two_coordinate_witness(group) {
                Ok(Some((g, n, qu))) => {
                    rep.pass("two-coordinate witness with s > 2 qu", format!("g = {:?}: s = {n}, qu = {qu}", g.support))
                }
                Ok(None) => rep.push("two-coordinate witness with s > 2 qu", Status::Inconclusive, "none found", None),
                Err(e) => rep.push("two-coordinate witness with s > 2 qu", Status::Inconclusive, e.to_string(), None),
            }
        }
    }
    rep.check(format!("s <= ceil(s) <= (1 + 1/{eps}) s"), ceil_bad.is_none(), at(ceil_bad));
    rep.check(format!("{eps} |g| <= s <= {smax} |g|"), bl_bad.is_none(), at(bl_bad));
    rep
}

/// For finite `m`: `s_{j+1} ≥ ℓ_{(j+1)m} s_j` for `j < J`. For `m = ∞` no
/// growth condition is imposed and the report says so.
pub fn check_kn_growth(m: Dim, ell: impl Fn(u64) -> BigInt, s: impl Fn(u64) -> BigRational, big_j: u64) -> Report {
    let mut rep = Report::new(format!("K_m scaling growth, m={m}"));
    let Some(mf) = m.finite() else {
        rep.push("s_{j+1} >= l_{(j+1)m} s_j", Status::Inconclusive, "no growth condition for m = inf", None);
        return rep;
    };
    let bad = (0..big_j).find(|&j| s(j + 1) < BigRational::from_integer(ell((j + 1) * mf)) * s(j));
    rep.check(
        "s_{j+1} >= l_{(j+1)m} s_j",
        bad.is_none(),
        bad.map(|j| format!("fails at j={j}")).unwrap_or(format!("j < {big_j}")),
    );
    rep
}

/// One point of an expanded cube and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubePoint {
    pub coords: Vec<u64>,
    pub element: SumElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEmbedding {
    pub points: Vec<CubePoint>,
    /// `Some(mismatches)` when the pairwise check ran.
    pub mismatches: Option<usize>,
    pub pairs_checked: usize,
}

impl CubeEmbedding {
    pub fn certified(&self) -> bool {
        self.mismatches == Some(0)
    }
}

/// Largest cube that is certified pairwise.
pub const CUBE_CERTIFY_LIMIT: u64 = 10_000;

/// Maps `{0,…,k_P}^n` into the coordinates of `P` (the `t`-th coordinate goes
/// to the `t`-th index of `P`) and, for at most 10⁴ points, compares every
/// pairwise distance with `s_P` times the ℓ¹ distance.
pub fn cube_embedding(group: &ScaledSum, block: &[usize], s_p: u64, k_p: u64, n: usize) -> Result<CubeEmbedding> {
    if block.len() < n {
        return Err(Error::Precondition(format!("|P| = {} < n = {n}", block.len())));
    }
    if s_p < 1 {
        return Err(Error::Precondition("s_P must be at least 1".into()));
    }
    let sp = BigRational::from_integer(s_p.into());
    for &i in block {
        let order = group.orders.get(i).ok_or(Error::OutOfRange { index: i, bound: group.len() })?;
        if let Order::Finite(l) = order {
            if BigUint::from(2 * k_p) > *l {
                return Err(Error::Precondition(format!("k_P = {k_p} > l_{i}/2 = {l}/2")));
            }
        }
        if group.scalings[i] != sp {
            return Err(Error::Precondition(format!("s_{i} = {} differs from s_P = {s_p}", group.scalings[i])));
        }
    }
    let count = (k_p + 1).checked_pow(n as u32).ok_or_else(|| Error::TooLarge("cube size".into()))?;
    let mut points = Vec::with_capacity(count.min(CUBE_CERTIFY_LIMIT) as usize);
    if count <= CUBE_CERTIFY_LIMIT {
        for idx in 0..count {
            let mut coords = Vec::with_capacity(n);
            let mut r = idx;
            for _ in 0..n {
                coords.push(r % (k_p + 1));
                r /= k_p + 1;
            }
            let element = SumElement::new(group, coords.iter().enumerate().map(|(t, &c)| (block[t], BigInt::from(c))))?;
            points.push(CubePoint { coords, element });
        }
    } else {
        return Ok(CubeEmbedding { points, mismatches: None, pairs_checked: 0 });
    }

    // Distances only depend on per-coordinate differences, so tabulate the
    // norm of each single-coordinate difference once.
    let k = k_p as i64;
    let mut table: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for &i in block.iter().take(n) {
        let row = (-k..=k)
            .map(|d| SumElement::new(group, [(i, BigInt::from(d))]).map(|g| norm_induced(&g, group)))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let int_table: Option<Vec<Vec<u128>>> = table
        .iter()
        .map(|row| row.iter().map(|v| if v.is_integer() { v.to_integer().to_u128() } else { None }).collect())
        .collect();
    let mut mismatches = 0;
    let mut pairs = 0;
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            pairs += 1;
            let (pa, pb) = (&points[a].coords, &points[b].coords);
            let l1: u64 = pa.iter().zip(pb).map(|(x, y)| x.abs_diff(*y)).sum();
            let ok = match &int_table {
                Some(t) => {
                    let d: u128 = (0..n).map(|c| t[c][(pa[c] as i64 - pb[c] as i64 + k) as usize]).sum();
                    d == s_p as u128 * l1 as u128
                }
                None => {
                    let d: BigRational =
                        (0..n).map(|c| table[c][(pa[c] as i64 - pb[c] as i64 + k) as usize].clone()).sum();
                    d == &sp * BigRational::from_integer(l1.into())
                }
            };
            if !ok {
                mismatches += 1;
            }
        }
    }
    Ok(CubeEmbedding { points, mismatches: Some(mismatches), pairs_checked: pairs })
}

/// `prefix^h ∏ u_i^{k_i}` as a formal product, with `(k_i)` the geodesic form
/// of `z` for the orders `ℓ_i` of `family`. Its formal length is
/// `|h||prefix| + Σ|k_i||u_i|`.
pub fn phi_word(h: &BigInt, z: &SumElement, prefix: &RleWord, family: &FamilySpec) -> Result<Expr> {
    let mut e = Expr::new();
    if !h.is_zero() {
        e.push_word(&prefix.pow(h)?);
    }
    for (&i, x) in z.support() {
        let ell = family.ell(i)?;
        if !ell.is_positive() {
            return Err(Error::InvalidConfig(format!("l_{i} = {ell} is not positive")));
        }
        let k = geodesic_coordinate(x, &Order::Finite(ell.magnitude().clone()));
        if !k.is_zero() {
            e.push_word(&family.word(i)?.pow(&k)?);
        }
    }
    Ok(e)
}

/// `K_m` inside `⊕ (m × s)_i Z_{ℓ_i}` for indices below `n`.
pub fn inflated_sum(
    m: Dim,
    ell: impl Fn(u64) -> BigUint,
    s: impl Fn(u64) -> BigRational,
    n: usize,
) -> Result<ScaledSum> {
    let orders = (0..n as u64).map(|i| Order::Finite(ell(i))).collect();
    let scalings = (0..n as u64).map(|i| s(block_index(m, i))).collect();
    ScaledSum::new(orders, scalings)
}
