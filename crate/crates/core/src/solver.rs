//! Cover construction pipelines.
//!
//! [`cover_bounded`] follows the `√n + C` induction, [`cover_sqrt`] the
//! sharper `√n` argument built on top of it, and [`solve`] returns the
//! smallest valid cover among those, the exact oracle and a greedy strip.
//! Size guarantees are reported only after checking the arithmetic on the
//! actual output.

use std::fmt;

use thiserror::Error;

use crate::bipartite::{self, BipartiteView};
use crate::construct::{
    self, find_long_path_structure, maximal_path_within, LongPathStructure, ReductionWitness, StructureOutcome,
    GUARD_EPS,
};
use crate::gen::isqrt;
use crate::model::{validate_cover, Colour, Colouring, Path, PathCover, Vertex};
use crate::oracle::{Oracle, DEFAULT_ORACLE_THRESHOLD};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("reduction guard failed: sqrt({n} - {s}) + {c1} + {k} > sqrt({n}) + {c2}")]
    GuardFailed { n: usize, s: usize, k: usize, c1: f64, c2: f64 },
    #[error("reduction witness is not valid for this colouring")]
    InvalidWitness,
    #[error("structure does not match the colouring")]
    InconsistentStructure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub c1: f64,
    pub c2: f64,
    /// Constant of the `√n + C` bound.
    pub c: f64,
    /// Threshold `n0 = C^n0_exponent` beyond which the `√n` bound is proved.
    pub n0_exponent: u32,
    pub oracle_threshold: usize,
    pub greedy_fallback: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            c1: 160_000.0,
            c2: 160_000.0,
            c: 160_000.0,
            n0_exponent: 10,
            oracle_threshold: DEFAULT_ORACLE_THRESHOLD,
            greedy_fallback: true,
        }
    }
}

impl SolverConfig {
    /// Same thresholds with a different `C` (and `C1 = C2 = C`).
    pub fn with_c(c: f64) -> Self {
        SolverConfig { c1: c, c2: c, c, ..Self::default() }
    }

    pub fn is_valid(&self) -> bool {
        self.c1 >= self.c2 && self.c2 >= 0.0 && self.c > 0.0 && self.oracle_threshold >= 1
    }

    /// `n > C^n0_exponent`, compared in log space.
    pub fn beyond_n0(&self, n: usize) -> bool {
        (n as f64).ln() > self.n0_exponent as f64 * self.c.ln()
    }

    /// `α_n = 9C / n^{1/4}`.
    pub fn alpha(&self, n: usize) -> f64 {
        9.0 * self.c / (n as f64).powf(0.25)
    }

    fn with_constants(&self, c1: f64, c2: f64) -> Self {
        SolverConfig { c1, c2, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Guarantee {
    /// `|cover| ≤ ⌊√n⌋`
    SqrtBound,
    /// `|cover| < √n + C`
    SqrtPlusCBound,
    NoGuarantee,
}

impl Guarantee {
    pub fn check(n: usize, size: usize, c: f64) -> Guarantee {
        if size <= isqrt(n) {
            Guarantee::SqrtBound
        } else if (size as f64) < (n as f64).sqrt() + c {
            Guarantee::SqrtPlusCBound
        } else {
            Guarantee::NoGuarantee
        }
    }
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guarantee::SqrtBound => "sqrt",
            Guarantee::SqrtPlusCBound => "sqrt+C",
            Guarantee::NoGuarantee => "none",
        })
    }
}

/// Tags recorded as the pipelines branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Oracle,
    Sqrt,
    Bounded,
    Greedy,
    BaseCase,
    StructureGuardFailed,
    Witness,
    Reduced,
    ReduceGuardFailed,
    Structure,
    EarlyExit,
    Decomposition,
    DecompositionFailed,
    FullDecomposition,
    ClassesUnbalanced,
    Fallback,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Oracle => "oracle",
            Branch::Sqrt => "sqrt",
            Branch::Bounded => "bounded",
            Branch::Greedy => "greedy",
            Branch::BaseCase => "base",
            Branch::StructureGuardFailed => "structure-guard-failed",
            Branch::Witness => "witness",
            Branch::Reduced => "reduced",
            Branch::ReduceGuardFailed => "reduce-guard-failed",
            Branch::Structure => "structure",
            Branch::EarlyExit => "early-exit",
            Branch::Decomposition => "decomposition",
            Branch::DecompositionFailed => "decomposition-failed",
            Branch::FullDecomposition => "full-decomposition",
            Branch::ClassesUnbalanced => "classes-unbalanced",
            Branch::Fallback => "fallback",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub cover: PathCover,
    pub guarantee: Guarantee,
    pub branch_trace: Vec<Branch>,
}

impl SolveResult {
    fn new(cover: PathCover, cfg: &SolverConfig, branch_trace: Vec<Branch>) -> Self {
        let guarantee = Guarantee::check(cover.n, cover.size(), cfg.c);
        SolveResult { cover, guarantee, branch_trace }
    }

    pub fn size(&self) -> usize {
        self.cover.size()
    }

    pub fn trace_string(&self) -> String {
        self.branch_trace.iter().map(Branch::to_string).collect::<Vec<_>>().join(">")
    }
}

/// `√(n−s) + C1 + k ≤ √n + C2`.
pub fn reduction_guard(n: usize, s: usize, k: usize, c1: f64, c2: f64) -> bool {
    ((n - s.min(n)) as f64).sqrt() + c1 + k as f64 <= (n as f64).sqrt() + c2 + GUARD_EPS
}

/// Covers `[n] \ S` with `recurse`, then adds the witness paths of the
/// colour the recursion chose.
pub fn reduce(
    g: &Colouring,
    w: &ReductionWitness,
    cfg: &SolverConfig,
    recurse: &mut dyn FnMut(&Colouring) -> PathCover,
) -> Result<PathCover, SolverError> {
    let n = g.n();
    if !w.is_valid(g) {
        return Err(SolverError::InvalidWitness);
    }
    if !reduction_guard(n, w.s.len(), w.k, cfg.c1, cfg.c2) {
        return Err(SolverError::GuardFailed { n, s: w.s.len(), k: w.k, c1: cfg.c1, c2: cfg.c2 });
    }
    let mut in_s = vec![false; n + 1];
    for &v in &w.s {
        in_s[v] = true;
    }
    let rest: Vec<Vertex> = (1..=n).filter(|&v| !in_s[v]).collect();
    if rest.is_empty() {
        return Ok(PathCover::new(Colour::Red, n, w.red_paths.clone()));
    }
    let h = g.induced(&rest).expect("rest is nonempty");
    let sub = recurse(&h);
    let mut paths: Vec<Path> = sub
        .paths
        .into_iter()
        .map(|p| Path::new(p.colour, p.vertices.into_iter().map(|v| rest[v - 1]).collect()))
        .collect();
    paths.extend(w.paths(sub.colour).iter().cloned());
    Ok(PathCover::new(sub.colour, n, paths))
}

/// The path, one path per pair of outside vertices that see it, and
/// singletons for those that do not: `1 + ⌈|Y1|/2⌉ + |Y0|` paths.
///
/// A pair with a common neighbour `x` on the path becomes `y1 x y2`;
/// otherwise the pair is joined through the path segment between their
/// neighbours. An odd leftover is attached to its lowest neighbour.
pub fn cover_from_structure(g: &Colouring, s: &LongPathStructure) -> Result<PathCover, SolverError> {
    if !s.is_consistent(g) {
        return Err(SolverError::InconsistentStructure);
    }
    let gamma = s.gamma;
    let p = &s.path.vertices;
    let nbrs = |y: Vertex| -> Vec<usize> { (0..p.len()).filter(|&i| g.colour(p[i], y) == gamma).collect() };

    let mut y0 = Vec::new();
    let mut y1 = Vec::new();
    for &y in &s.y {
        let nb = nbrs(y);
        if nb.is_empty() {
            y0.push(y);
        } else {
            y1.push((y, nb));
        }
    }

    let mut paths = vec![s.path.clone()];
    for pair in y1.chunks(2) {
        match pair {
            [(a, na), (b, nb)] => {
                let common = p
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| na.binary_search(i).is_ok() && nb.binary_search(i).is_ok())
                    .map(|(_, &x)| x)
                    .min();
                let verts = match common {
                    Some(x) => vec![*a, x, *b],
                    None => {
                        let (i, j) = (na[0], nb[0]);
                        let mut v = vec![*a];
                        if i <= j {
                            v.extend_from_slice(&p[i..=j]);
                        } else {
                            v.extend(p[j..=i].iter().rev());
                        }
                        v.push(*b);
                        v
                    }
                };
                paths.push(Path::new(gamma, verts));
            }
            [(a, na)] => {
                let x = na.iter().map(|&i| p[i]).min().unwrap();
                paths.push(Path::new(gamma, vec![*a, x]));
            }
            _ => unreachable!(),
        }
    }
    paths.extend(y0.into_iter().map(|y| Path::single(gamma, y)));
    Ok(PathCover::new(gamma, g.n(), paths))
}

fn y0_count(s: &LongPathStructure) -> usize {
    s.y_degrees.iter().filter(|&&d| d == 0).count()
}

/// Repeatedly strips an end-maximal path of the majority colour from the
/// uncovered vertices.
pub fn greedy_cover(g: &Colouring) -> PathCover {
    let n = g.n();
    let red = g.upper_triangle().filter(|&c| c == Colour::Red).count();
    let gamma = if 2 * red >= g.edge_count() { Colour::Red } else { Colour::Blue };
    let mut free = vec![true; n + 1];
    free[0] = false;
    let mut paths = Vec::new();
    while let Some(start) = (1..=n).find(|&v| free[v]) {
        let p = maximal_path_within(g, gamma, start, &free);
        for &v in &p.vertices {
            free[v] = false;
        }
        paths.push(p);
    }
    PathCover::new(gamma, n, paths)
}

/// Strategies for instances the induction treats as base cases: the
/// oracle when small enough, otherwise the best of a swept path per colour
/// with its outside vertices paired up, and the greedy strip.
fn base_cover(g: &Colouring, cfg: &SolverConfig) -> PathCover {
    let oracle = Oracle::new(cfg.oracle_threshold);
    if let Ok(r) = oracle.exact_f(g) {
        return r.witness;
    }
    let mut best = greedy_cover(g);
    for gamma in Colour::BOTH {
        let start = construct::maximal_path(g, gamma, None);
        let p = match construct::sweep_path(g, start, f64::INFINITY) {
            Ok(p) => p,
            Err((p, _)) => p,
        };
        let s = LongPathStructure::around(g, p, f64::INFINITY);
        if let Ok(c) = cover_from_structure(g, &s) {
            if c.size() < best.size() {
                best = c;
            }
        }
    }
    best
}

/// `√n + C` pipeline.
pub fn cover_bounded(g: &Colouring, cfg: &SolverConfig) -> SolveResult {
    let mut trace = vec![Branch::Bounded];
    let cover = bounded_inner(g, cfg, &mut trace);
    SolveResult::new(cover, cfg, trace)
}

fn bounded_inner(g: &Colouring, cfg: &SolverConfig, trace: &mut Vec<Branch>) -> PathCover {
    let n = g.n();
    if n as f64 <= cfg.c || n <= cfg.oracle_threshold {
        trace.push(Branch::BaseCase);
        return base_cover(g, cfg);
    }
    let c = cfg.c;
    let s = match find_long_path_structure(g, c, c) {
        Err(_) => {
            trace.push(Branch::StructureGuardFailed);
            return base_cover(g, cfg);
        }
        Ok(StructureOutcome::Witness(w)) => {
            trace.push(Branch::Witness);
            let sub_cfg = cfg.with_constants(c, c);
            let mut sub_trace = Vec::new();
            let reduced = reduce(g, &w, &sub_cfg, &mut |h| bounded_inner(h, cfg, &mut sub_trace));
            return match reduced {
                Ok(cover) => {
                    trace.push(Branch::Reduced);
                    trace.extend(sub_trace);
                    cover
                }
                Err(_) => {
                    trace.push(Branch::ReduceGuardFailed);
                    trace.push(Branch::BaseCase);
                    base_cover(g, cfg)
                }
            };
        }
        Ok(StructureOutcome::Structure(s)) => s,
    };
    trace.push(Branch::Structure);

    let root = (n as f64).sqrt();
    if y0_count(&s) as f64 <= root / 2.0 || s.y.len() as f64 <= root {
        trace.push(Branch::EarlyExit);
        return cover_from_structure(g, &s).expect("structure is consistent");
    }

    match opposite_decomposition(g, &s) {
        Some(cover) => {
            trace.push(Branch::Decomposition);
            cover
        }
        None => {
            trace.push(Branch::DecompositionFailed);
            trace.push(Branch::BaseCase);
            base_cover(g, cfg)
        }
    }
}

/// Opposite-colour paths between the path and `Y` covering all of `Y` and
/// most of the path, then extra paths alternating between the leftover
/// path vertices and `Y0` (whose edges to the path are all opposite).
fn opposite_decomposition(g: &Colouring, s: &LongPathStructure) -> Option<PathCover> {
    let opposite = s.gamma.complement();
    let m = s.y_degrees.iter().copied().max().unwrap_or(0);
    let view = BipartiteView::from_colouring(g, &s.path.vertices, &s.y, opposite, m).ok()?;
    let mut paths = bipartite::decompose(&view).ok()?;
    let mut hit = vec![false; g.n() + 1];
    for p in &paths {
        for &v in &p.vertices {
            hit[v] = true;
        }
    }
    let mut leftover: Vec<Vertex> = s.path.vertices.iter().copied().filter(|&v| !hit[v]).collect();
    leftover.sort_unstable();
    let y0: Vec<Vertex> = s.y.iter().zip(&s.y_degrees).filter(|(_, &d)| d == 0).map(|(&y, _)| y).collect();
    if y0.is_empty() && !leftover.is_empty() {
        return None;
    }
    for chunk in leftover.chunks(y0.len() + 1) {
        let mut v = Vec::with_capacity(2 * chunk.len());
        for (k, &x) in chunk.iter().enumerate() {
            if k > 0 {
                v.push(y0[k - 1]);
            }
            v.push(x);
        }
        paths.push(Path::new(opposite, v));
    }
    Some(PathCover::new(opposite, g.n(), paths))
}

/// `√n` pipeline.
pub fn cover_sqrt(g: &Colouring, cfg: &SolverConfig) -> SolveResult {
    let mut trace = vec![Branch::Sqrt];
    let n = g.n();
    let c = cfg.c;
    let fallback = |mut trace: Vec<Branch>| {
        trace.push(Branch::Fallback);
        trace.push(Branch::Bounded);
        let cover = bounded_inner(g, cfg, &mut trace);
        SolveResult::new(cover, cfg, trace)
    };

    let s = match find_long_path_structure(g, c, 0.0) {
        Err(_) => {
            trace.push(Branch::StructureGuardFailed);
            return fallback(trace);
        }
        Ok(StructureOutcome::Witness(w)) => {
            trace.push(Branch::Witness);
            let sub_cfg = cfg.with_constants(c, 0.0);
            let mut sub_trace = Vec::new();
            return match reduce(g, &w, &sub_cfg, &mut |h| bounded_inner(h, cfg, &mut sub_trace)) {
                Ok(cover) => {
                    trace.push(Branch::Reduced);
                    trace.extend(sub_trace);
                    SolveResult::new(cover, cfg, trace)
                }
                Err(_) => {
                    trace.push(Branch::ReduceGuardFailed);
                    fallback(trace)
                }
            };
        }
        Ok(StructureOutcome::Structure(s)) => s,
    };
    trace.push(Branch::Structure);

    let root = (n as f64).sqrt();
    let alpha = cfg.alpha(n);
    let y = s.y.len();
    if y0_count(&s) as f64 <= (1.0 - 2.0 * alpha) * root + GUARD_EPS || (y + 1) * (y + 1) <= n {
        trace.push(Branch::EarlyExit);
        let cover = cover_from_structure(g, &s).expect("structure is consistent");
        return SolveResult::new(cover, cfg, trace);
    }

    let view = BipartiteView::from_colouring(g, &s.path.vertices, &s.y, s.gamma.complement(), 0)
        .expect("path and Y are disjoint");
    match bipartite::decompose_full(&view) {
        Ok(paths) => {
            trace.push(Branch::FullDecomposition);
            let cover = PathCover::new(s.gamma.complement(), n, paths);
            SolveResult::new(cover, cfg, trace)
        }
        Err(_) => {
            trace.push(Branch::ClassesUnbalanced);
            fallback(trace)
        }
    }
}

/// The smallest valid cover among the oracle (when `n` is small enough),
/// [`cover_sqrt`], [`cover_bounded`] and the greedy strip, in that priority
/// on ties.
pub fn solve(g: &Colouring, cfg: &SolverConfig) -> SolveResult {
    let mut candidates = Vec::new();
    if let Ok(r) = Oracle::new(cfg.oracle_threshold).exact_f(g) {
        candidates.push(SolveResult::new(r.witness, cfg, vec![Branch::Oracle]));
    }
    candidates.push(cover_sqrt(g, cfg));
    candidates.push(cover_bounded(g, cfg));
    if cfg.greedy_fallback {
        candidates.push(SolveResult::new(greedy_cover(g), cfg, vec![Branch::Greedy]));
    }
    let mut best: Option<SolveResult> = None;
    for c in candidates {
        debug_assert!(validate_cover(g, &c.cover).valid, "{:?}", c.branch_trace);
        if !validate_cover(g, &c.cover).valid {
            continue;
        }
        if best.as_ref().is_none_or(|b| c.size() < b.size()) {
            best = Some(c);
        }
    }
    best.unwrap_or_else(|| SolveResult::new(PathCover::singletons(Colour::Red, g.n()), cfg, vec![Branch::Fallback]))
}
