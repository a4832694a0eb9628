//! Independent brute-force oracles shared by the integration tests. Apart
//! from `sweep`, which drives the library and rechecks it, nothing here calls
//! into the library's algorithms; inputs and outputs are plain letter vectors
//! (`±(sym+1)`).
#![allow(dead_code)]

pub mod diagrams;
pub mod quotients;
pub mod sweep;

/// Letter-by-letter stack reduction.
pub fn naive_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &l in w {
        match out.last() {
            Some(&t) if t == -l => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn naive_cyclic_reduce(w: &[i32]) -> Vec<i32> {
    let mut w = naive_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

pub fn rotate(w: &[i32], s: usize) -> Vec<i32> {
    if w.is_empty() {
        return Vec::new();
    }
    let s = s % w.len();
    w[s..].iter().chain(&w[..s]).copied().collect()
}

/// Distinct cyclic shifts of `w` and `w⁻¹`.
pub fn star(w: &[i32]) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = Vec::new();
    for base in [w.to_vec(), inverse(w)] {
        for s in 0..w.len() {
            let r = rotate(&base, s);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

pub fn lcp(a: &[i32], b: &[i32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Longest common prefix over pairs of distinct star elements.
pub fn brute_piece(u: &[i32], v: &[i32]) -> usize {
    let (su, sv) = (star(u), star(v));
    let mut best = 0;
    for a in &su {
        for b in &sv {
            if a != b {
                best = best.max(lcp(a, b));
            }
        }
    }
    best
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Piece length by scanning every diagonal of the `|u| x |v|` torus for its
/// longest cyclic run of matching letters. A diagonal with no mismatch is a
/// pair of identical windows when the lengths agree, and is skipped then.
pub fn streak_piece(u: &[i32], v: &[i32]) -> usize {
    let (n, m) = (u.len(), v.len());
    if n == 0 || m == 0 {
        return 0;
    }
    let cap = n.min(m);
    let g = gcd(n, m);
    let l = n / g * m;
    let mut best = 0;
    for uu in [u.to_vec(), inverse(u)] {
        for vv in [v.to_vec(), inverse(v)] {
            for c in 0..g {
                let (mut i, mut j) = (0usize, c);
                let mut first_run = None;
                let mut cur = 0usize;
                let mut longest = 0usize;
                let mut any_mismatch = false;
                for _ in 0..l {
                    if uu[i] == vv[j] {
                        cur += 1;
                    } else {
                        if first_run.is_none() {
                            first_run = Some(cur);
                        }
                        any_mismatch = true;
                        longest = longest.max(cur);
                        cur = 0;
                    }
                    i += 1;
                    if i == n {
                        i = 0;
                    }
                    j += 1;
                    if j == m {
                        j = 0;
                    }
                }
                if !any_mismatch {
                    if n != m {
                        best = best.max(cap);
                    }
                    continue;
                }
                // The trailing streak wraps into the leading one.
                longest = longest.max(cur + first_run.unwrap_or(0));
                best = best.max(longest.min(cap));
            }
        }
    }
    best
}

/// The dense expansion of `(a^ma x^ma)^n` over symbols `s`, `t`.
pub fn block(s: usize, t: usize, ma: usize, n: usize) -> Vec<i32> {
    let (s, t) = (s as i32 + 1, t as i32 + 1);
    let mut out = Vec::with_capacity(2 * ma * n);
    for _ in 0..n {
        out.extend(std::iter::repeat_n(s, ma));
        out.extend(std::iter::repeat_n(t, ma));
    }
    out
}
