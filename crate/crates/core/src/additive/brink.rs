//! Checker for the restricted-variable Chevalley theorem used by the
//! small-subset proof.
//!
//! Given congruences f_j(x_1, …, x_n) ≡ 0 (mod p^{α_j}) and a finite
//! set A_i of admissible integer values per variable (injective mod p),
//! the theorem states: if Σ(|A_i|−1) exceeds Σ(p^{α_j}−1)·deg f_j, the
//! solution count inside A_1 × … × A_n is never exactly one. The
//! checker verifies the hypothesis and then counts by enumeration.

use super::AdditiveError;
use crate::ring::is_prime;

/// Enumeration cap for the tuple count Π|A_i|.
const MAX_TUPLES: u128 = 10_000_000;

/// One congruence: monomials `(coefficient, exponents)` with one
/// exponent per variable, read modulo `p^alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrinkPoly {
    pub alpha: u32,
    pub monomials: Vec<(i64, Vec<u32>)>,
}

/// A full instance: shared prime, one admissible set per variable, one
/// or more congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrinkInstance {
    pub p: u64,
    pub sets: Vec<Vec<i64>>,
    pub polys: Vec<BrinkPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrinkVerdict {
    /// Σ(|A_i|−1) ≤ Σ(p^{α_j}−1)·deg f_j; the theorem is silent and no
    /// count is attempted.
    HypothesisFails { lhs: u128, rhs: u128 },
    /// No tuple satisfies every congruence.
    Empty,
    /// Exactly this many tuples do (≥ 1). Under the hypothesis the
    /// theorem forbids the value 1.
    Count(u64),
}

impl BrinkInstance {
    /// Parses the line-oriented instance format:
    ///
    /// ```text
    /// brink
    /// prime 3
    /// set 0 1 2
    /// set 0 1
    /// poly 1
    /// mono 1 1 0
    /// ```
    ///
    /// `set` lines declare A_1, A_2, … in order; each `poly ALPHA` opens
    /// a congruence mod p^ALPHA whose `mono COEFF E1 … EN` lines carry
    /// one exponent per declared set. Blank lines and `#` comments are
    /// ignored; sets must precede polynomials.
    pub fn from_text(text: &str) -> Result<BrinkInstance, AdditiveError> {
        let fail = |line: usize, msg: &str| AdditiveError::Format(format!("line {line}: {msg}"));
        let mut p: Option<u64> = None;
        let mut sets: Vec<Vec<i64>> = Vec::new();
        let mut polys: Vec<BrinkPoly> = Vec::new();
        let mut saw_header = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut words = trimmed.split_whitespace();
            let directive = words.next().expect("trimmed line is nonempty");
            if !saw_header {
                if directive != "brink" || words.next().is_some() {
                    return Err(fail(line, "expected the header `brink`"));
                }
                saw_header = true;
                continue;
            }
            match directive {
                "prime" => {
                    if p.is_some() {
                        return Err(fail(line, "duplicate `prime`"));
                    }
                    p = Some(parse_one(words, line, "prime")?);
                }
                "set" => {
                    if p.is_none() {
                        return Err(fail(line, "`prime` must precede `set`"));
                    }
                    if !polys.is_empty() {
                        return Err(fail(line, "all `set` lines must precede `poly`"));
                    }
                    let elems: Vec<i64> = parse_all(words, line, "set element")?;
                    if elems.is_empty() {
                        return Err(fail(line, "a `set` needs at least one element"));
                    }
                    sets.push(elems);
                }
                "poly" => {
                    if sets.is_empty() {
                        return Err(fail(line, "declare the variable sets before `poly`"));
                    }
                    let alpha: u32 = parse_one(words, line, "exponent")?;
                    if alpha == 0 {
                        return Err(fail(line, "modulus exponent must be positive"));
                    }
                    polys.push(BrinkPoly {
                        alpha,
                        monomials: Vec::new(),
                    });
                }
                "mono" => {
                    let poly = polys
                        .last_mut()
                        .ok_or_else(|| fail(line, "`mono` before any `poly`"))?;
                    let coeff: i64 = match words.next() {
                        Some(w) => w
                            .parse()
                            .map_err(|_| fail(line, &format!("malformed coefficient `{w}`")))?,
                        None => return Err(fail(line, "`mono` needs a coefficient")),
                    };
                    let exps: Vec<u32> = parse_all(words, line, "exponent")?;
                    if exps.len() != sets.len() {
                        return Err(fail(
                            line,
                            &format!("expected {} exponents, one per set", sets.len()),
                        ));
                    }
                    poly.monomials.push((coeff, exps));
                }
                other => return Err(fail(line, &format!("unknown directive `{other}`"))),
            }
        }
        if !saw_header {
            return Err(AdditiveError::Format("missing `brink` header".into()));
        }
        let p = p.ok_or_else(|| AdditiveError::Format("missing `prime`".into()))?;
        if polys.is_empty() {
            return Err(AdditiveError::Format("no congruences declared".into()));
        }
        if let Some(j) = polys.iter().position(|f| f.monomials.is_empty()) {
            return Err(AdditiveError::Format(format!(
                "congruence {} has no monomials",
                j + 1
            )));
        }
        Ok(BrinkInstance { p, sets, polys })
    }
}

/// Exactly one value and nothing after it.
fn parse_one<'a, T: std::str::FromStr>(
    mut words: impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<T, AdditiveError> {
    let value = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| AdditiveError::Format(format!("line {line}: malformed {what}")))?;
    if words.next().is_some() {
        return Err(AdditiveError::Format(format!(
            "line {line}: trailing tokens after {what}"
        )));
    }
    Ok(value)
}

fn parse_all<'a, T: std::str::FromStr>(
    words: impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<Vec<T>, AdditiveError> {
    words
        .map(|w| {
            w.parse()
                .map_err(|_| AdditiveError::Format(format!("line {line}: malformed {what} `{w}`")))
        })
        .collect()
}

/// Verifies the hypothesis and, when it holds, counts the solutions of
/// every congruence simultaneously over A_1 × … × A_n. Sets are
/// numbered from 1 in errors, matching their file order.
pub fn brink_check(instance: &BrinkInstance) -> Result<BrinkVerdict, AdditiveError> {
    let p = instance.p;
    if !is_prime(p) {
        return Err(AdditiveError::NotPrime(p));
    }
    let n = instance.sets.len();
    for (i, set) in instance.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(AdditiveError::Format(format!("set {} is empty", i + 1)));
        }
        let mut residues: Vec<u64> = set
            .iter()
            .map(|&a| (a as i128).rem_euclid(p as i128) as u64)
            .collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.len() != set.len() {
            return Err(AdditiveError::InjectivityViolated { index: i + 1, p });
        }
    }
    let mut moduli = Vec::with_capacity(instance.polys.len());
    for f in &instance.polys {
        if f.monomials.iter().any(|(_, exps)| exps.len() != n) {
            return Err(AdditiveError::Format(
                "monomial arity does not match the number of sets".into(),
            ));
        }
        let q = p.checked_pow(f.alpha).ok_or_else(|| {
            AdditiveError::Format(format!("modulus {p}^{} overflows 64 bits", f.alpha))
        })?;
        moduli.push(q);
    }

    let lhs: u128 = instance.sets.iter().map(|s| s.len() as u128 - 1).sum();
    let rhs: u128 = instance
        .polys
        .iter()
        .zip(&moduli)
        .map(|(f, &q)| (q as u128 - 1) * degree_mod(f, q))
        .sum();
    if lhs <= rhs {
        return Ok(BrinkVerdict::HypothesisFails { lhs, rhs });
    }

    let size: u128 = instance.sets.iter().map(|s| s.len() as u128).product();
    if size > MAX_TUPLES {
        return Err(AdditiveError::SearchSpaceTooLarge {
            size,
            cap: MAX_TUPLES,
        });
    }

    let mut count = 0u64;
    let mut choice = vec![0usize; n];
    'tuples: loop {
        let tuple: Vec<i64> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| instance.sets[i][c])
            .collect();
        if instance
            .polys
            .iter()
            .zip(&moduli)
            .all(|(f, &q)| eval_mod(f, &tuple, q) == 0)
        {
            count += 1;
        }
        // odometer, last variable fastest
        for i in (0..n).rev() {
            choice[i] += 1;
            if choice[i] < instance.sets[i].len() {
                continue 'tuples;
            }
            choice[i] = 0;
        }
        break;
    }
    Ok(if count == 0 {
        BrinkVerdict::Empty
    } else {
        BrinkVerdict::Count(count)
    })
}

/// Max total degree over the monomials whose coefficient survives mod q;
/// 0 if the polynomial vanishes identically.
fn degree_mod(f: &BrinkPoly, q: u64) -> u128 {
    f.monomials
        .iter()
        .filter(|(c, _)| (*c as i128).rem_euclid(q as i128) != 0)
        .map(|(_, exps)| exps.iter().map(|&e| e as u128).sum())
        .max()
        .unwrap_or(0)
}

fn eval_mod(f: &BrinkPoly, tuple: &[i64], q: u64) -> u64 {
    let mut acc = 0u64;
    for (coeff, exps) in &f.monomials {
        let mut term = (*coeff as i128).rem_euclid(q as i128) as u64;
        for (&a, &e) in tuple.iter().zip(exps) {
            let base = (a as i128).rem_euclid(q as i128) as u64;
            term = mul_mod(term, pow_mod(base, e, q), q);
        }
        acc = (acc + term) % q;
    }
    acc
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u32, q: u64) -> u64 {
    base %= q;
    let mut acc = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}
