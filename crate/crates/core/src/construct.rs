//! Whole-graph path constructions: the red/blue two-path cover, end-maximal
//! monochromatic paths, the rotation step, and the search for a long path
//! whose outside vertices have few same-colour edges into it.

use thiserror::Error;

use crate::bipartite::{self, BipartiteView};
use crate::model::{Colour, Colouring, Path, Vertex};

/// Absolute tolerance for real-valued guards.
pub const GUARD_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("guard failed: {0}")]
    GuardFailed(String),
}

/// A red path and a blue path, vertex-disjoint, together covering `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPathCover {
    pub red: Path,
    pub blue: Path,
}

impl TwoPathCover {
    pub fn path(&self, colour: Colour) -> &Path {
        match colour {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }
}

/// Inserts vertices one by one keeping a red path `P` and blue path `Q`.
/// A new vertex `v` goes onto the red end `p` if `pv` is red, onto the blue
/// end `q` if `qv` is blue; otherwise the end of whichever path matches the
/// colour of `pq` is moved across and `v` follows it.
pub fn two_path_cover(g: &Colouring) -> TwoPathCover {
    let mut red: Vec<Vertex> = Vec::new();
    let mut blue: Vec<Vertex> = Vec::new();
    for v in 1..=g.n() {
        let (p, q) = match (red.last().copied(), blue.last().copied()) {
            (Some(p), Some(q)) => (p, q),
            (None, Some(q)) if g.colour(q, v) == Colour::Blue => {
                blue.push(v);
                continue;
            }
            (Some(p), None) if g.colour(p, v) == Colour::Blue => {
                blue.push(v);
                continue;
            }
            _ => {
                red.push(v);
                continue;
            }
        };
        if g.colour(p, v) == Colour::Red {
            red.push(v);
        } else if g.colour(q, v) == Colour::Blue {
            blue.push(v);
        } else if g.colour(p, q) == Colour::Red {
            // p-q red and q-v red: move q to the red path.
            blue.pop();
            red.push(q);
            red.push(v);
        } else {
            // q-p blue and p-v blue: move p to the blue path.
            red.pop();
            blue.push(p);
            blue.push(v);
        }
    }
    TwoPathCover { red: Path::new(Colour::Red, red), blue: Path::new(Colour::Blue, blue) }
}

/// Extends a `gamma` path at both ends until neither endpoint has a
/// `gamma` edge to a vertex outside it. Without a seed, starts at vertex 1.
pub fn maximal_path(g: &Colouring, gamma: Colour, seed: Option<&Path>) -> Path {
    let mut verts = match seed {
        Some(p) if !p.is_empty() => p.vertices.clone(),
        _ => vec![1],
    };
    let mut in_path = vec![false; g.n() + 1];
    for &v in &verts {
        in_path[v] = true;
    }
    for _ in 0..2 {
        loop {
            let end = *verts.last().unwrap();
            match (1..=g.n()).find(|&v| !in_path[v] && g.colour(end, v) == gamma) {
                Some(v) => {
                    in_path[v] = true;
                    verts.push(v);
                }
                None => break,
            }
        }
        verts.reverse();
    }
    Path::new(gamma, verts)
}

/// [`maximal_path`] restricted to vertices with `allowed[v]`, from `start`.
pub(crate) fn maximal_path_within(g: &Colouring, gamma: Colour, start: Vertex, allowed: &[bool]) -> Path {
    let mut verts = vec![start];
    let mut free = allowed.to_vec();
    free[start] = false;
    for _ in 0..2 {
        loop {
            let end = *verts.last().unwrap();
            match (1..=g.n()).find(|&v| free[v] && g.colour(end, v) == gamma) {
                Some(v) => {
                    free[v] = false;
                    verts.push(v);
                }
                None => break,
            }
        }
        verts.reverse();
    }
    Path::new(gamma, verts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RotationOutcome {
    /// A valid path with exactly one more vertex.
    LongerPath(Path),
    /// Predecessors of the attachment set, pairwise joined in `colour`
    /// (the opposite of the path's colour).
    CliqueCertificate {
        colour: Colour,
        vertices: Vec<Vertex>,
    },
    SmallDegree,
}

/// Tries to absorb `y` into `p`. Let `B` be the positions of `p` joined to
/// `y` in the path's colour. An endpoint in `B`, two consecutive positions
/// in `B`, or two predecessors of `B` joined in the path's colour each give a
/// longer path. Otherwise the predecessors form an opposite-colour clique,
/// returned as a certificate when `|B| > degree_bound`.
pub fn rotate_or_extend(g: &Colouring, p: &Path, y: Vertex, degree_bound: f64) -> RotationOutcome {
    let gamma = p.colour;
    let v = &p.vertices;
    if v.is_empty() {
        return RotationOutcome::LongerPath(Path::single(gamma, y));
    }
    let k = v.len();
    let b: Vec<usize> = (0..k).filter(|&i| g.colour(v[i], y) == gamma).collect();
    if b.is_empty() {
        return RotationOutcome::SmallDegree;
    }
    if b[0] == 0 {
        let mut out = Vec::with_capacity(k + 1);
        out.push(y);
        out.extend_from_slice(v);
        return RotationOutcome::LongerPath(Path::new(gamma, out));
    }
    if *b.last().unwrap() == k - 1 {
        let mut out = v.clone();
        out.push(y);
        return RotationOutcome::LongerPath(Path::new(gamma, out));
    }
    if let Some(w) = b.windows(2).find(|w| w[1] == w[0] + 1) {
        let mut out = Vec::with_capacity(k + 1);
        out.extend_from_slice(&v[..=w[0]]);
        out.push(y);
        out.extend_from_slice(&v[w[1]..]);
        return RotationOutcome::LongerPath(Path::new(gamma, out));
    }
    let preds: Vec<usize> = b.iter().map(|&i| i - 1).collect();
    for (s, &i) in preds.iter().enumerate() {
        for &j in &preds[s + 1..] {
            if g.colour(v[i], v[j]) == gamma {
                // v1..vi vj vj-1..vi+1 y vj+1..vk
                let mut out = Vec::with_capacity(k + 1);
                out.extend_from_slice(&v[..=i]);
                out.extend(v[i + 1..=j].iter().rev());
                out.push(y);
                out.extend_from_slice(&v[j + 1..]);
                return RotationOutcome::LongerPath(Path::new(gamma, out));
            }
        }
    }
    if b.len() as f64 > degree_bound + GUARD_EPS {
        RotationOutcome::CliqueCertificate {
            colour: gamma.complement(),
            vertices: preds.iter().map(|&i| v[i]).collect(),
        }
    } else {
        RotationOutcome::SmallDegree
    }
}

/// A set `S` covered both by the red paths and by the blue paths, each
/// family having at most `k` members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    pub s: Vec<Vertex>,
    pub red_paths: Vec<Path>,
    pub blue_paths: Vec<Path>,
    pub k: usize,
}

impl ReductionWitness {
    pub fn new(s: Vec<Vertex>, red_paths: Vec<Path>, blue_paths: Vec<Path>) -> Self {
        let k = red_paths.len().max(blue_paths.len());
        ReductionWitness { s, red_paths, blue_paths, k }
    }

    /// The trivial witness: nothing to remove.
    pub fn empty() -> Self {
        ReductionWitness { s: Vec::new(), red_paths: Vec::new(), blue_paths: Vec::new(), k: 0 }
    }

    pub fn paths(&self, colour: Colour) -> &[Path] {
        match colour {
            Colour::Red => &self.red_paths,
            Colour::Blue => &self.blue_paths,
        }
    }

    pub fn is_valid(&self, g: &Colouring) -> bool {
        let ok_family = |paths: &[Path], colour: Colour| {
            paths.len() <= self.k
                && paths.iter().all(|p| p.colour == colour && p.is_valid(g))
                && self.s.iter().all(|x| paths.iter().any(|p| p.vertices.contains(x)))
        };
        let mut sorted = self.s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == self.s.len()
            && self.s.iter().all(|&x| x >= 1 && x <= g.n())
            && ok_family(&self.red_paths, Colour::Red)
            && ok_family(&self.blue_paths, Colour::Blue)
    }
}

/// A long `gamma` path whose outside vertices each have few `gamma` edges into it.
#[derive(Debug, Clone, PartialEq)]
pub struct LongPathStructure {
    pub path: Path,
    pub gamma: Colour,
    /// Vertices off the path, ascending.
    pub y: Vec<Vertex>,
    pub degree_bound: f64,
    /// `y_degrees[i]` counts `gamma` edges from `y[i]` into the path.
    pub y_degrees: Vec<usize>,
}

impl LongPathStructure {
    /// Collects `Y` and its degrees for an arbitrary `gamma` path.
    pub fn around(g: &Colouring, path: Path, degree_bound: f64) -> Self {
        let gamma = path.colour;
        let mut on = vec![false; g.n() + 1];
        for &v in &path.vertices {
            on[v] = true;
        }
        let y: Vec<Vertex> = (1..=g.n()).filter(|&v| !on[v]).collect();
        let y_degrees = y.iter().map(|&u| path.vertices.iter().filter(|&&x| g.colour(x, u) == gamma).count()).collect();
        LongPathStructure { path, gamma, y, degree_bound, y_degrees }
    }

    /// `√n + 8(C1−C2+1)·n^{1/4}`.
    pub fn y_limit(n: usize, c1: f64, c2: f64) -> f64 {
        let n = n as f64;
        n.sqrt() + 8.0 * (c1 - c2 + 1.0) * n.powf(0.25)
    }

    pub fn satisfies_bounds(&self, n: usize, c1: f64, c2: f64) -> bool {
        self.y.len() as f64 <= Self::y_limit(n, c1, c2) + GUARD_EPS
            && self.y_degrees.iter().all(|&d| d as f64 <= self.degree_bound + GUARD_EPS)
    }

    /// Checks the recorded data against `g`.
    pub fn is_consistent(&self, g: &Colouring) -> bool {
        self.path.colour == self.gamma
            && self.path.is_valid(g)
            && *self == Self::around(g, self.path.clone(), self.degree_bound)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StructureOutcome {
    Structure(LongPathStructure),
    Witness(ReductionWitness),
}

/// `2(C1−C2+1)·√n`.
pub fn degree_bound(n: usize, c1: f64, c2: f64) -> f64 {
    2.0 * (c1 - c2 + 1.0) * (n as f64).sqrt()
}

/// Whether `n > 8⁴(C1−C2+1)⁴`, where the search's size guarantee applies.
pub fn structure_guarantee_applies(n: usize, c1: f64, c2: f64) -> bool {
    (n as f64) > (8.0 * (c1 - c2 + 1.0)).powi(4)
}

/// Sweeps every outside vertex with [`rotate_or_extend`], re-maximising
/// after each improvement, until all report `SmallDegree` or a clique
/// certificate appears.
pub fn sweep_path(g: &Colouring, start: Path, bound: f64) -> Result<Path, (Path, Vec<Vertex>)> {
    let gamma = start.colour;
    let mut p = maximal_path(g, gamma, Some(&start));
    'outer: loop {
        let mut on = vec![false; g.n() + 1];
        for &v in &p.vertices {
            on[v] = true;
        }
        for y in (1..=g.n()).filter(|&v| !on[v]) {
            match rotate_or_extend(g, &p, y, bound) {
                RotationOutcome::LongerPath(q) => {
                    p = maximal_path(g, gamma, Some(&q));
                    continue 'outer;
                }
                RotationOutcome::CliqueCertificate { vertices, .. } => return Err((p, vertices)),
                RotationOutcome::SmallDegree => {}
            }
        }
        return Ok(p);
    }
}

/// Looks for either a reduction witness or a long monochromatic path with
/// low same-colour degree from the outside.
///
/// 1. Take the longer path of [`two_path_cover`] (ties go to blue), colour
///    `gamma`, truncated to `⌊n/2⌋` vertices: `Q`.
/// 2. `W` is the lowest `⌊n/2⌋` vertices off `Q`.
/// 3. A long opposite-colour path `R` between `Q` and `W` meeting `Q` in at
///    least `2(C1−C2+1)√n` vertices is a witness. Otherwise a long `gamma`
///    path between them seeds the next step.
/// 4. Grow and sweep with [`rotate_or_extend`]; a clique certificate is a
///    witness.
/// 5. If `|Y|` is within bounds, return the structure.
/// 6. Otherwise decompose the opposite-colour graph between the path and
///    `Y` into few paths and return the part of the path they cover.
pub fn find_long_path_structure(g: &Colouring, c1: f64, c2: f64) -> Result<StructureOutcome, ConstructError> {
    let n = g.n();
    let bound = degree_bound(n, c1, c2);
    if n == 1 {
        let p = Path::single(Colour::Blue, 1);
        return Ok(StructureOutcome::Structure(LongPathStructure::around(g, p, bound)));
    }

    let tpc = two_path_cover(g);
    let gamma = if tpc.red.len() > tpc.blue.len() { Colour::Red } else { Colour::Blue };
    let opposite = gamma.complement();
    let long = tpc.path(gamma).clone();
    let half = n / 2;
    let q: Vec<Vertex> = long.vertices[..half].to_vec();
    let mut on_q = vec![false; n + 1];
    for &v in &q {
        on_q[v] = true;
    }
    let w: Vec<Vertex> = (1..=n).filter(|&v| !on_q[v]).take(half).collect();

    let opp_view = BipartiteView::from_colouring(g, &q, &w, opposite, 0).expect("Q and W are disjoint");
    let r = bipartite::long_alternating_path(&opp_view);
    let s: Vec<Vertex> = r.vertices.iter().copied().filter(|&v| on_q[v]).collect();
    if s.len() as f64 >= bound - GUARD_EPS {
        let qpath = Path::new(gamma, q);
        return Ok(StructureOutcome::Witness(witness_for(gamma, s, vec![r], vec![qpath])));
    }

    let gamma_view = BipartiteView::from_colouring(g, &q, &w, gamma, 0).expect("Q and W are disjoint");
    let seed = bipartite::long_alternating_path(&gamma_view);
    let seed = if seed.len() > long.len() { seed } else { long };

    let p = match sweep_path(g, seed, bound) {
        Ok(p) => p,
        Err((p, clique)) => {
            let red = Path::new(opposite, clique.clone());
            return Ok(StructureOutcome::Witness(witness_for(gamma, clique, vec![red], vec![p])));
        }
    };

    let structure = LongPathStructure::around(g, p, bound);
    if structure.satisfies_bounds(n, c1, c2) {
        return Ok(StructureOutcome::Structure(structure));
    }

    let m = structure.y_degrees.iter().copied().max().unwrap_or(0);
    let view = BipartiteView::from_colouring(g, &structure.path.vertices, &structure.y, opposite, m)
        .expect("path and Y are disjoint");
    let paths =
        bipartite::decompose(&view).map_err(|e| ConstructError::GuardFailed(format!("decomposition step: {e}")))?;
    let mut hit = vec![false; n + 1];
    for p in &paths {
        for &v in &p.vertices {
            hit[v] = true;
        }
    }
    let s: Vec<Vertex> = structure.path.vertices.iter().copied().filter(|&v| hit[v]).collect();
    Ok(StructureOutcome::Witness(witness_for(gamma, s, paths, vec![structure.path])))
}

/// Sorts `s` and files the path families under their colours.
fn witness_for(gamma: Colour, mut s: Vec<Vertex>, opposite: Vec<Path>, same: Vec<Path>) -> ReductionWitness {
    s.sort_unstable();
    match gamma {
        Colour::Blue => ReductionWitness::new(s, opposite, same),
        Colour::Red => ReductionWitness::new(s, same, opposite),
    }
}
