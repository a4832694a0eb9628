use super::validate::ConstructionConfig;
use super::{Dim, FamilyKind, FamilySpec, Seq};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{Alphabet, Expr, RleWord};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    A,
    B,
    H,
    G,
}

impl Target {
    pub fn parse(s: &str) -> Result<Target> {
        match s.trim() {
            "A" => Ok(Target::A),
            "B" => Ok(Target::B),
            "H" => Ok(Target::H),
            "G" => Ok(Target::G),
            t => Err(Error::Parse(format!("unknown target `{t}` (expected A, B, H or G)"))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn directive(spec: &FamilySpec, alphabet: &Alphabet) -> String {
    let syms = format!("{},{}", alphabet.name(spec.syms[0]), alphabet.name(spec.syms[1]));
    match &spec.kind {
        FamilyKind::Technical { part, p } => format!(
            "family technical name={} sym={syms} part={part} k={} seq=\"{p}\" l=\"{}\" N={}",
            spec.name, spec.k, spec.ell, spec.truncation
        ),
        FamilyKind::L { mi, ni } => format!(
            "family L name={} sym={syms} k={} mi=\"{mi}\" ni=\"{ni}\" l=\"{}\" N={}",
            spec.name, spec.k, spec.ell, spec.truncation
        ),
    }
}

/// Rewrites symbol indices of `w` from `from` to `to` by name.
fn remap(w: &RleWord, from: &Alphabet, to: &Alphabet) -> Result<RleWord> {
    let runs: Vec<_> = w
        .period()
        .iter()
        .map(|r| Ok(crate::words::Run { sym: to.lookup(from.name(r.sym))?, sign: r.sign, exp: r.exp.clone() }))
        .collect::<Result<_>>()?;
    RleWord::block_power(&runs, w.reps())
}

/// Truncated presentation of `A`, `B`, `H` or `G` for indices below the
/// configured truncation. Refused unless the configuration is well-formed.
pub fn emit_presentation(config: &ConstructionConfig, target: Target) -> Result<Presentation> {
    let structure = config.structure_report();
    if let Some(c) = structure.first_failure() {
        return Err(Error::Refused(format!("configuration check `{}` failed: {}", c.name, c.detail)));
    }
    let full = &config.alphabet;
    let alphabet = match target {
        Target::A => Alphabet::new([full.name(config.u.syms[0]), full.name(config.u.syms[1])])?,
        Target::B => Alphabet::new([full.name(config.v.syms[0]), full.name(config.v.syms[1])])?,
        Target::H | Target::G => full.clone(),
    };
    let mut rels = Vec::new();
    for i in 0..config.truncation {
        let u = match target {
            Target::B => RleWord::empty(),
            _ => remap(&config.u.word(i)?, full, &alphabet)?,
        };
        let v = match target {
            Target::A => RleWord::empty(),
            _ => remap(&config.v.word(i)?, full, &alphabet)?,
        };
        let ell = config.ell(i)?;
        let letters = |syms: &[usize]| -> Result<Vec<RleWord>> {
            syms.iter().map(|&s| Ok(RleWord::letter(alphabet.lookup(full.name(s))?, crate::words::Sign::Pos))).collect()
        };
        match target {
            Target::A => {
                for s in letters(&config.u.syms)? {
                    rels.push(Expr::commutator(&s, &u));
                }
                rels.push(Expr::from_word(&u.pow(&ell)?));
            }
            Target::B => {
                for s in letters(&config.v.syms)? {
                    rels.push(Expr::commutator(&s, &v));
                }
                rels.push(Expr::from_word(&v.pow(&ell)?));
            }
            Target::H => {
                rels.push(Expr::from_word(&u));
                rels.push(Expr::from_word(&v));
            }
            Target::G => {
                let all: Vec<usize> = config.u.syms.iter().chain(config.v.syms.iter()).copied().collect();
                for s in letters(&all)? {
                    rels.push(Expr::commutator(&s, &u));
                }
                rels.push(Expr::from_word(&u.pow(&ell)?));
                rels.push(Expr::product(&[u.clone(), v.inverse()]));
            }
        }
    }
    let mut p = Presentation::new(alphabet, rels);
    p.lambda = Some(config.lambda.clone());
    p.meta.push(format!("dims: m={} n={}", config.m, config.n));
    p.meta.push(directive(&config.u, full));
    p.meta.push(directive(&config.v, full));
    p.meta.push(format!("target: {target}"));
    Ok(p)
}

/// Splits `key=value` tokens, honouring double quotes.
fn kv_tokens(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut chars = s.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        if chars.peek().is_none() {
            break;
        }
        let key: String = std::iter::from_fn(|| chars.next_if(|&c| c != '=' && !c.is_whitespace())).collect();
        if chars.next() != Some('=') {
            return Err(Error::Parse(format!("expected key=value near `{key}`")));
        }
        let val: String = if chars.peek() == Some(&'"') {
            chars.next();
            let v: String = std::iter::from_fn(|| chars.next_if(|&c| c != '"')).collect();
            if chars.next() != Some('"') {
                return Err(Error::Parse("unterminated quote".into()));
            }
            v
        } else {
            std::iter::from_fn(|| chars.next_if(|c| !c.is_whitespace())).collect()
        };
        out.insert(key, val);
    }
    Ok(out)
}

fn need<'a>(kv: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    kv.get(key).map(String::as_str).ok_or_else(|| Error::Parse(format!("family directive needs `{key}=`")))
}

fn parse_family(line: &str, alphabet: &Alphabet, dims: (Dim, Dim)) -> Result<FamilySpec> {
    let rest = line.strip_prefix("family ").expect("prefix");
    let (kind, rest) = rest.trim().split_once(' ').ok_or_else(|| Error::Parse("empty family directive".into()))?;
    let kv = kv_tokens(rest)?;
    let (s0, s1) = need(&kv, "sym")?.split_once(',').ok_or_else(|| Error::Parse("sym=a,x expected".into()))?;
    let syms = [alphabet.lookup(s0)?, alphabet.lookup(s1)?];
    let k: u64 = need(&kv, "k")?.parse().map_err(|_| Error::Parse("bad k".into()))?;
    let truncation: usize = need(&kv, "N")?.parse().map_err(|_| Error::Parse("bad N".into()))?;
    let kind = match kind {
        "technical" => {
            FamilyKind::Technical { part: Dim::parse(need(&kv, "part")?)?, p: Seq::parse(need(&kv, "seq")?)? }
        }
        "L" => FamilyKind::L { mi: Seq::parse(need(&kv, "mi")?)?, ni: Seq::parse(need(&kv, "ni")?)? },
        other => return Err(Error::Parse(format!("unknown family kind `{other}`"))),
    };
    Ok(FamilySpec {
        name: need(&kv, "name")?.to_string(),
        kind,
        syms,
        k,
        ell: Seq::parse(need(&kv, "l")?)?,
        truncation,
        dims,
    })
}

/// Recovers the configuration and target from a presentation's header.
pub fn config_from_presentation(p: &Presentation) -> Result<(ConstructionConfig, Option<Target>)> {
    let mut dims = None;
    let mut target = None;
    let mut fams = Vec::new();
    for m in &p.meta {
        if let Some(d) = m.strip_prefix("dims:") {
            let kv = kv_tokens(d)?;
            dims = Some((Dim::parse(need(&kv, "m")?)?, Dim::parse(need(&kv, "n")?)?));
        } else if let Some(t) = m.strip_prefix("target:") {
            target = Some(Target::parse(t)?);
        }
    }
    let dims = dims.ok_or_else(|| Error::Parse("missing `dims:` line".into()))?;
    for m in &p.meta {
        if m.starts_with("family ") {
            fams.push(parse_family(m, &p.alphabet, dims)?);
        }
    }
    if fams.len() != 2 {
        return Err(Error::Parse(format!("expected two family directives, found {}", fams.len())));
    }
    let v = fams.pop().expect("two");
    let u = fams.pop().expect("two");
    if u.truncation != v.truncation {
        return Err(Error::InvalidConfig("families use different truncations".into()));
    }
    let lambda = p.lambda.clone().ok_or_else(|| Error::Parse("missing `lambda:` line".into()))?;
    let truncation = u.truncation;
    Ok((ConstructionConfig { alphabet: p.alphabet.clone(), m: dims.0, n: dims.1, lambda, u, v, truncation }, target))
}
