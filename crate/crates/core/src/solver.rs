//! Value sets and solvability over nilpotent rings via restricted
//! substitution supports.
//!
//! Over a class-`l` nilpotent ring, a polynomial in `n` variables
//! attains every value of its range already on tuples whose projection
//! into each primary block `R_i` is nonzero in at most
//! `b_i = min(n, k·p_i^{β_i})` coordinates, with `k = l-1` (or tighter,
//! from the expanded form). Streaming that set instead of all `m^n`
//! tuples is what makes the decision procedures polynomial in `n` for a
//! fixed ring.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::binomial;
use thiserror::Error;

use crate::poly::PolyExpr;
use crate::ring::{FiniteRing, PrimaryDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("ring is not nilpotent; the restricted-support method does not apply")]
    NotNilpotentRing,
}

/// Knobs for [`range`], [`solvable`], and [`equivalent`].
#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Monomial-variable bound; defaults to `min(class-1, n)` and is
    /// clamped to `n`.
    pub k_override: Option<usize>,
    /// Try to shrink k via expansion to the standard form. Falls back
    /// silently to the default when the expansion exceeds the budget.
    pub tighten: bool,
    /// Monomial cap for the tightening expansion.
    pub monomial_budget: usize,
    /// Worker threads; results are byte-identical for every value.
    pub jobs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            k_override: None,
            tighten: false,
            monomial_budget: 100_000,
            jobs: 1,
        }
    }
}

/// Per-component support budgets for one enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    n: usize,
    k: usize,
    budgets: Vec<usize>,
}

impl SupportProfile {
    /// Budgets `b_i = min(n, k·p_i^{β_i})`, one per primary component.
    pub fn new(decomposition: &PrimaryDecomposition, n: usize, k: usize) -> Self {
        let budgets = decomposition
            .components()
            .iter()
            .map(|c| {
                let cap = (k as u128).saturating_mul(c.block_order() as u128);
                (n as u128).min(cap) as usize
            })
            .collect();
        SupportProfile { n, k, budgets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn budgets(&self) -> &[usize] {
        &self.budgets
    }
}

/// The exact range of a polynomial, with one witness per value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeReport {
    pub values: BTreeSet<usize>,
    /// First point (in stream order) attaining each value.
    pub witnesses: BTreeMap<usize, Vec<usize>>,
    pub evaluations_used: u64,
    pub k_used: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveReport {
    Solvable {
        witness: Vec<usize>,
        /// Stream position of the witness + 1 — independent of the
        /// worker count.
        evaluations_used: u64,
    },
    Unsolvable {
        evaluations_used: u64,
    },
}

impl SolveReport {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveReport::Solvable { .. })
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            SolveReport::Solvable { witness, .. } => Some(witness),
            SolveReport::Unsolvable { .. } => None,
        }
    }

    pub fn evaluations_used(&self) -> u64 {
        match self {
            SolveReport::Solvable {
                evaluations_used, ..
            }
            | SolveReport::Unsolvable { evaluations_used } => *evaluations_used,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivReport {
    pub equivalent: bool,
    /// A point where the two polynomials differ.
    pub counterexample: Option<Vec<usize>>,
    pub evaluations_used: u64,
}

/// One primary component's tuple enumerator: every c ∈ R_i^n with at
/// most `budget` nonzero coordinates, ordered by support size, then
/// support position (lexicographic), then value assignment (odometer,
/// last coordinate fastest, nonzero values by ascending element index).
struct ComponentStream {
    n: usize,
    budget: usize,
    nonzero: Vec<usize>,
    /// Current support, a sorted index combination.
    support: Vec<usize>,
    /// Current assignment: indices into `nonzero`, parallel to `support`.
    choice: Vec<usize>,
}

impl ComponentStream {
    fn new(n: usize, budget: usize, members: &BTreeSet<usize>, zero: usize) -> Self {
        ComponentStream {
            n,
            budget,
            nonzero: members.iter().copied().filter(|&e| e != zero).collect(),
            support: Vec::new(),
            choice: Vec::new(),
        }
    }

    /// Writes the current tuple into `out` by ring addition.
    fn add_into(&self, ring: &FiniteRing, out: &mut [usize]) {
        for (pos, val) in self.support.iter().zip(&self.choice) {
            out[*pos] = ring.add(out[*pos], self.nonzero[*val]);
        }
    }

    /// Steps to the next state; returns false (after resetting to the
    /// first state, the empty support) when the stream wraps around.
    fn advance(&mut self) -> bool {
        // next value assignment, last coordinate fastest
        for slot in self.choice.iter_mut().rev() {
            if *slot + 1 < self.nonzero.len() {
                *slot += 1;
                return true;
            }
            *slot = 0;
        }
        // next support of the same size, lexicographic
        if next_combination(&mut self.support, self.n) {
            return true;
        }
        // next support size
        let t = self.support.len() + 1;
        if t <= self.budget {
            self.support = (0..t).collect();
            self.choice = vec![0; t];
            return true;
        }
        self.support.clear();
        self.choice.clear();
        false
    }
}

/// Lexicographic successor of a sorted k-combination of `0..n`; false
/// when `comb` was the last one (leaving it at the first).
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] + 1 <= n - (k - i) {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    for (j, slot) in comb.iter_mut().enumerate() {
        *slot = j;
    }
    false
}

/// Deterministic stream of all support-restricted tuples: the cartesian
/// product of the component streams (first component most significant),
/// combined by coordinatewise ring addition. The all-zero tuple comes
/// first; no tuple repeats.
pub struct SupportPoints<'r> {
    ring: &'r FiniteRing,
    n: usize,
    components: Vec<ComponentStream>,
    started: bool,
    done: bool,
}

impl Iterator for SupportPoints<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        let mut i = self.components.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.components[i].advance() {
                break;
            }
        }
        Some(self.current())
    }
}

impl SupportPoints<'_> {
    fn current(&self) -> Vec<usize> {
        let mut out = vec![self.ring.zero(); self.n];
        for comp in &self.components {
            comp.add_into(self.ring, &mut out);
        }
        out
    }
}

/// Streams every `c ∈ R^n` whose projection into component `i` has at
/// most `profile.budgets()[i]` nonzero coordinates.
pub fn support_points<'r>(
    ring: &'r FiniteRing,
    decomposition: &PrimaryDecomposition,
    profile: &SupportProfile,
) -> SupportPoints<'r> {
    let components = decomposition
        .components()
        .iter()
        .zip(profile.budgets())
        .map(|(c, &b)| ComponentStream::new(profile.n(), b, &c.members, ring.zero()))
        .collect();
    SupportPoints {
        ring,
        n: profile.n(),
        components,
        started: false,
        done: false,
    }
}

/// Closed-form stream length:
/// `Π_i Σ_{t=0}^{b_i} C(n,t)·(|R_i|-1)^t`.
pub fn count_support_points(
    decomposition: &PrimaryDecomposition,
    profile: &SupportProfile,
) -> u128 {
    let n = profile.n() as u128;
    let mut total: u128 = 1;
    for (c, &b) in decomposition.components().iter().zip(profile.budgets()) {
        let q = c.block_order() as u128 - 1;
        let mut comp: u128 = 0;
        for t in 0..=(b as u128) {
            let term = binomial(n, t)
                .checked_mul(
                    q.checked_pow(t as u32)
                        .expect("support-point count overflows u128"),
                )
                .expect("support-point count overflows u128");
            comp = comp.checked_add(term).expect("support-point count overflows u128");
        }
        total = total
            .checked_mul(comp)
            .expect("support-point count overflows u128");
    }
    total
}

/// Exact value set of `f` over the whole of R^n (n = highest variable
/// index), computed from the restricted support stream.
pub fn range(
    ring: &FiniteRing,
    f: &PolyExpr,
    options: &SolverOptions,
) -> Result<RangeReport, SolverError> {
    let (decomposition, profile) = prepare(ring, f, options)?;
    let stream = support_points(ring, &decomposition, &profile);
    let (values, witnesses, evaluations_used) = if options.jobs > 1 {
        collect_range_parallel(ring, f, stream, options.jobs)
    } else {
        collect_range_sequential(ring, f, stream)
    };
    Ok(RangeReport {
        values,
        witnesses,
        evaluations_used,
        k_used: profile.k(),
        n: profile.n(),
    })
}

/// Decides whether `f(c) = g(c)` for some `c`, i.e. whether `f + (-g)`
/// has a root; `g` defaults to the zero constant. Early-exits at the
/// first root in stream order.
pub fn solvable(
    ring: &FiniteRing,
    f: &PolyExpr,
    g: Option<&PolyExpr>,
    options: &SolverOptions,
) -> Result<SolveReport, SolverError> {
    let zero = PolyExpr::constant(ring.zero());
    let g = g.unwrap_or(&zero);
    let h = f.clone().add(g.clone().neg());
    let (decomposition, profile) = prepare(ring, &h, options)?;
    let stream = support_points(ring, &decomposition, &profile);
    let found = if options.jobs > 1 {
        find_root_parallel(ring, &h, stream, options.jobs)
    } else {
        find_root_sequential(ring, &h, stream)
    };
    Ok(match found {
        Ok((position, witness)) => SolveReport::Solvable {
            witness,
            evaluations_used: position + 1,
        },
        Err(total) => SolveReport::Unsolvable {
            evaluations_used: total,
        },
    })
}

/// Decides whether `f` and `g` agree at every point: the range of
/// `f + (-g)` must be exactly `{zero}`.
pub fn equivalent(
    ring: &FiniteRing,
    f: &PolyExpr,
    g: &PolyExpr,
    options: &SolverOptions,
) -> Result<EquivReport, SolverError> {
    let h = f.clone().add(g.clone().neg());
    let report = range(ring, &h, options)?;
    let counterexample = report
        .values
        .iter()
        .find(|&&v| v != ring.zero())
        .map(|v| report.witnesses[v].clone());
    Ok(EquivReport {
        equivalent: counterexample.is_none(),
        counterexample,
        evaluations_used: report.evaluations_used,
    })
}

/// Shared front end: nilpotency check, k selection, decomposition.
fn prepare(
    ring: &FiniteRing,
    h: &PolyExpr,
    options: &SolverOptions,
) -> Result<(PrimaryDecomposition, SupportProfile), SolverError> {
    let n = h.max_var();
    let class = ring
        .power_ideals()
        .class()
        .ok_or(SolverError::NotNilpotentRing)?;
    let mut k = match options.k_override {
        Some(k) => k.min(n),
        None => (class - 1).min(n),
    };
    if options.tighten && options.k_override.is_none() {
        if let Ok(sp) = h.expand_standard(ring, class, options.monomial_budget) {
            k = k.min(sp.max_distinct_vars());
        }
    }
    let decomposition = ring
        .primary_decomposition()
        .expect("validated tables always decompose");
    let profile = SupportProfile::new(&decomposition, n, k);
    Ok((decomposition, profile))
}

fn collect_range_sequential(
    ring: &FiniteRing,
    f: &PolyExpr,
    stream: SupportPoints<'_>,
) -> (BTreeSet<usize>, BTreeMap<usize, Vec<usize>>, u64) {
    let mut values = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    let mut evaluations = 0u64;
    for point in stream {
        let v = f
            .evaluate(ring, &point)
            .expect("stream points bind every variable");
        evaluations += 1;
        if values.insert(v) {
            witnesses.insert(v, point);
        }
    }
    (values, witnesses, evaluations)
}

/// Wave-parallel version with the same observable behaviour: workers
/// scan contiguous slices and the merge keeps the stream-first witness
/// per value.
fn collect_range_parallel(
    ring: &FiniteRing,
    f: &PolyExpr,
    mut stream: SupportPoints<'_>,
    jobs: usize,
) -> (BTreeSet<usize>, BTreeMap<usize, Vec<usize>>, u64) {
    const CHUNK: usize = 1024;
    let mut values = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    let mut evaluations = 0u64;
    loop {
        let wave: Vec<Vec<usize>> = stream.by_ref().take(CHUNK * jobs).collect();
        if wave.is_empty() {
            break;
        }
        evaluations += wave.len() as u64;
        let per = wave.len().div_ceil(jobs);
        let firsts: Vec<Vec<(usize, usize)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = wave
                .chunks(per)
                .map(|slice| {
                    scope.spawn(move || {
                        let mut seen = BTreeSet::new();
                        let mut first = Vec::new();
                        for (i, point) in slice.iter().enumerate() {
                            let v = f
                                .evaluate(ring, point)
                                .expect("stream points bind every variable");
                            if seen.insert(v) {
                                first.push((v, i));
                            }
                        }
                        first
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (slice_idx, first) in firsts.into_iter().enumerate() {
            for (v, i) in first {
                if values.insert(v) {
                    witnesses.insert(v, wave[slice_idx * per + i].clone());
                }
            }
        }
    }
    (values, witnesses, evaluations)
}

fn find_root_sequential(
    ring: &FiniteRing,
    h: &PolyExpr,
    stream: SupportPoints<'_>,
) -> Result<(u64, Vec<usize>), u64> {
    let mut total = 0u64;
    for (pos, point) in stream.enumerate() {
        total += 1;
        let v = h
            .evaluate(ring, &point)
            .expect("stream points bind every variable");
        if v == ring.zero() {
            return Ok((pos as u64, point));
        }
    }
    Err(total)
}

fn find_root_parallel(
    ring: &FiniteRing,
    h: &PolyExpr,
    mut stream: SupportPoints<'_>,
    jobs: usize,
) -> Result<(u64, Vec<usize>), u64> {
    const CHUNK: usize = 1024;
    let mut base = 0u64;
    loop {
        let wave: Vec<Vec<usize>> = stream.by_ref().take(CHUNK * jobs).collect();
        if wave.is_empty() {
            return Err(base);
        }
        let per = wave.len().div_ceil(jobs);
        let hits: Vec<Option<usize>> = std::thread::scope(|scope| {
            let handles: Vec<_> = wave
                .chunks(per)
                .map(|slice| {
                    scope.spawn(move || {
                        slice.iter().position(|point| {
                            h.evaluate(ring, point)
                                .expect("stream points bind every variable")
                                == ring.zero()
                        })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (slice_idx, hit) in hits.into_iter().enumerate() {
            if let Some(i) = hit {
                let wave_idx = slice_idx * per + i;
                return Ok((base + wave_idx as u64, wave[wave_idx].clone()));
            }
        }
        base += wave.len() as u64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scaled(p: u64, a: u32) -> FiniteRing {
        FiniteRing::scaled_zmod(p, a).unwrap()
    }

    fn order_six() -> FiniteRing {
        scaled(2, 2).direct_sum(&scaled(3, 2))
    }

    fn profile(ring: &FiniteRing, n: usize, k: usize) -> (PrimaryDecomposition, SupportProfile) {
        let d = ring.primary_decomposition().unwrap();
        let p = SupportProfile::new(&d, n, k);
        (d, p)
    }

    fn parse(ring: &FiniteRing, text: &str) -> PolyExpr {
        PolyExpr::parse(text, ring).unwrap()
    }

    #[test]
    fn counts_for_two_element_ring_match_binomial_sums() {
        let r = scaled(2, 2);
        // b = min(n, 2), one nonzero value: sum of C(n,t) for t <= 2
        for (n, expected) in [(4, 11u128), (8, 37), (12, 79), (16, 137), (20, 211)] {
            let (d, p) = profile(&r, n, 1);
            assert_eq!(count_support_points(&d, &p), expected, "n={n}");
        }
    }

    #[test]
    fn stream_length_matches_count() {
        let cases: Vec<(FiniteRing, usize, usize)> = vec![
            (scaled(2, 2), 12, 1),
            (scaled(2, 3), 5, 1),
            (scaled(2, 3), 4, 2),
            (scaled(3, 2), 6, 1),
            (order_six(), 2, 1),
            (order_six(), 5, 1),
            (FiniteRing::zero_mul(1).unwrap(), 3, 1),
            (scaled(2, 2), 0, 1),
            (scaled(2, 2), 7, 0),
        ];
        for (ring, n, k) in cases {
            let (d, p) = profile(&ring, n, k);
            let points: Vec<_> = support_points(&ring, &d, &p).collect();
            let distinct: BTreeSet<_> = points.iter().cloned().collect();
            assert_eq!(points.len(), distinct.len(), "stream repeated a tuple");
            assert_eq!(
                points.len() as u128,
                count_support_points(&d, &p),
                "order {} n={n} k={k}",
                ring.order()
            );
        }
    }

    #[test]
    fn order_six_budgets_and_counts() {
        let r = order_six();
        // n=2: budgets saturate at n, so the full 36-tuple cube is streamed
        let (d, p) = profile(&r, 2, 1);
        assert_eq!(p.budgets(), &[2, 2]);
        assert_eq!(count_support_points(&d, &p), 36);
        // n=5: budgets (2,3) bite: (1+5+10) * (1+10+40+80) = 16*131
        let (d, p) = profile(&r, 5, 1);
        assert_eq!(p.budgets(), &[2, 3]);
        assert_eq!(count_support_points(&d, &p), 2096);
        assert!(2096 < 6u128.pow(5));
    }

    #[test]
    fn stream_equals_support_filtered_cube() {
        // independent definition: keep c ∈ R^n iff for every component,
        // the projected tuple has at most b_i nonzero coordinates
        let r = order_six();
        let n = 5;
        let (d, p) = profile(&r, n, 1);
        let streamed: BTreeSet<Vec<usize>> = support_points(&r, &d, &p).collect();
        let mut expected = BTreeSet::new();
        let mut tuple = vec![0usize; n];
        'outer: loop {
            let ok = d.components().iter().zip(p.budgets()).all(|(c, &b)| {
                tuple
                    .iter()
                    .filter(|&&x| c.projection[x] != r.zero())
                    .count()
                    <= b
            });
            if ok {
                expected.insert(tuple.clone());
            }
            for slot in tuple.iter_mut().rev() {
                *slot += 1;
                if *slot < r.order() {
                    continue 'outer;
                }
                *slot = 0;
            }
            break;
        }
        assert_eq!(streamed, expected);
    }

    #[test]
    fn zero_tuple_comes_first_and_n_zero_is_a_single_empty_tuple() {
        let r = scaled(2, 3);
        let (d, p) = profile(&r, 3, 1);
        let mut stream = support_points(&r, &d, &p);
        assert_eq!(stream.next().unwrap(), vec![0, 0, 0]);
        let (d, p) = profile(&r, 0, 1);
        let points: Vec<_> = support_points(&r, &d, &p).collect();
        assert_eq!(points, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn range_examples_over_scaled_rings() {
        let r4 = scaled(2, 2);
        let rep = range(&r4, &parse(&r4, "x1*x2 + e1"), &SolverOptions::default()).unwrap();
        assert_eq!(rep.values, BTreeSet::from([1]));
        let rep = range(&r4, &parse(&r4, "x1"), &SolverOptions::default()).unwrap();
        assert_eq!(rep.values, BTreeSet::from([0, 1]));

        // 2Z/8Z: squares are {0, 4}, i.e. indices {0, 2}
        let r8 = scaled(2, 3);
        let rep = range(&r8, &parse(&r8, "x1*x1"), &SolverOptions::default()).unwrap();
        assert_eq!(rep.values, BTreeSet::from([0, 2]));
    }

    #[test]
    fn range_witnesses_actually_evaluate_to_their_value() {
        let r = scaled(2, 3);
        let f = parse(&r, "x1*x2 + x3 - e1");
        let rep = range(&r, &f, &SolverOptions::default()).unwrap();
        for (&v, point) in &rep.witnesses {
            assert_eq!(f.evaluate(&r, point).unwrap(), v);
        }
        assert_eq!(
            rep.values.iter().copied().collect::<Vec<_>>(),
            rep.witnesses.keys().copied().collect::<Vec<_>>()
        );
    }

    #[test]
    fn solvable_examples() {
        let r4 = scaled(2, 2);
        match solvable(&r4, &parse(&r4, "x1 + x1"), None, &SolverOptions::default()).unwrap() {
            SolveReport::Solvable { witness, evaluations_used } => {
                assert_eq!(witness, vec![0]);
                assert_eq!(evaluations_used, 1);
            }
            other => panic!("expected solvable, got {other:?}"),
        }
        assert!(matches!(
            solvable(&r4, &parse(&r4, "x1*x1 + e1"), None, &SolverOptions::default()).unwrap(),
            SolveReport::Unsolvable { .. }
        ));

        // 2Z/8Z: x1*x2 = -4 has the solution (2,2) since 4+4 = 0 mod 8
        let r8 = scaled(2, 3);
        match solvable(&r8, &parse(&r8, "x1*x2 + e2"), None, &SolverOptions::default()).unwrap() {
            SolveReport::Solvable { witness, .. } => {
                let f = parse(&r8, "x1*x2 + e2");
                assert_eq!(f.evaluate(&r8, &witness).unwrap(), r8.zero());
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn solvable_against_explicit_right_hand_side() {
        let r8 = scaled(2, 3);
        let f = parse(&r8, "x1*x1");
        let g = parse(&r8, "e2");
        match solvable(&r8, &f, Some(&g), &SolverOptions::default()).unwrap() {
            SolveReport::Solvable { witness, .. } => {
                assert_eq!(f.evaluate(&r8, &witness).unwrap(), 2);
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn equivalence_examples() {
        let r4 = scaled(2, 2);
        let rep = equivalent(
            &r4,
            &parse(&r4, "x1*(x2*x1)"),
            &parse(&r4, "(x1*x2)*x1"),
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(rep.equivalent);

        // class 2: every product vanishes, so these agree identically
        let rep = equivalent(
            &r4,
            &parse(&r4, "x1*(x2*x1)"),
            &parse(&r4, "x1*x2"),
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(rep.equivalent);

        let r8 = scaled(2, 3);
        let rep = equivalent(
            &r8,
            &parse(&r8, "x1*x1"),
            &parse(&r8, "e0"),
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(!rep.equivalent);
        assert_eq!(rep.counterexample, Some(vec![1])); // x1 = 2
    }

    #[test]
    fn non_nilpotent_rings_are_refused() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let field = FiniteRing::validate(2, &add, &mul).unwrap();
        let f = parse(&field, "x1");
        assert_eq!(
            range(&field, &f, &SolverOptions::default()).unwrap_err(),
            SolverError::NotNilpotentRing
        );
        assert_eq!(
            solvable(&field, &f, None, &SolverOptions::default()).unwrap_err(),
            SolverError::NotNilpotentRing
        );
        assert_eq!(
            equivalent(&field, &f, &f, &SolverOptions::default()).unwrap_err(),
            SolverError::NotNilpotentRing
        );
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let r = order_six();
        let f = parse(&r, "x1*x2 + x3*(e1 - x1) + e4");
        let g = parse(&r, "x2*x2");
        let base_range = range(&r, &f, &SolverOptions::default()).unwrap();
        let base_solve = solvable(&r, &f, Some(&g), &SolverOptions::default()).unwrap();
        for jobs in [2, 3, 8] {
            let opts = SolverOptions {
                jobs,
                ..SolverOptions::default()
            };
            assert_eq!(range(&r, &f, &opts).unwrap(), base_range, "jobs={jobs}");
            assert_eq!(solvable(&r, &f, Some(&g), &opts).unwrap(), base_solve, "jobs={jobs}");
        }
    }

    #[test]
    fn enlarging_k_never_changes_the_range() {
        let r = scaled(2, 3); // class 3, default k = 2
        for text in ["x1*x2 + x2*x1", "x1*x1*x2 - x2", "e1*x1 + x2*e3"] {
            let f = parse(&r, text);
            let base = range(&r, &f, &SolverOptions::default()).unwrap();
            for k in 2..5 {
                let opts = SolverOptions {
                    k_override: Some(k),
                    ..SolverOptions::default()
                };
                assert_eq!(range(&r, &f, &opts).unwrap().values, base.values, "k={k}");
            }
        }
    }

    #[test]
    fn tightening_shrinks_k_for_single_variable_monomials() {
        let r = scaled(2, 3); // class 3, order 4, so the default k is 2
        // every expanded monomial holds one distinct variable, so k drops
        // to 1 and the budget min(n, k·4) starts to bite at n = 5
        let f = parse(&r, "x1*e1 + x2 + x3 + x4 + x5");
        let plain = range(&r, &f, &SolverOptions::default()).unwrap();
        let tight = range(
            &r,
            &f,
            &SolverOptions {
                tighten: true,
                ..SolverOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.values, tight.values);
        assert_eq!(plain.k_used, 2);
        assert_eq!(tight.k_used, 1);
        assert_eq!(plain.evaluations_used, 1024); // the full cube 4^5
        assert_eq!(tight.evaluations_used, 781); // sum of C(5,t)*3^t, t <= 4
    }

    #[test]
    fn k_override_is_clamped_to_n() {
        let r = scaled(2, 2);
        let f = parse(&r, "x1");
        let rep = range(
            &r,
            &f,
            &SolverOptions {
                k_override: Some(100),
                ..SolverOptions::default()
            },
        )
        .unwrap();
        assert_eq!(rep.k_used, 1);
    }

    #[test]
    fn next_combination_walks_lexicographically() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
            ]
        );
        assert_eq!(c, vec![0, 1]); // reset after wrap
    }
}
