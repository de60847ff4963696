//! One-colour bipartite views of a colouring and the path constructions
//! that work inside them: a single long alternating path, repeated
//! decomposition into few long paths, full coverage when many `Y`-vertices
//! see all of `X`, and the bipartite two-colour path search.
//!
//! All selections break ties by position in the view's ordered sides, which
//! is ascending vertex id for views built from a colouring.

use std::fmt;

use thiserror::Error;

use crate::model::{Colour, Colouring, Path, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// every y has degree at least (|X|+|Y|)/2
    HalfDegree,
    /// |X| >= |Y| + 2m
    SlackSize,
    /// every y has degree at least |X| - m
    SlackDegree,
    /// |X| > |Y|
    MoreXThanY,
    /// X1 = Y1 = {} or |X0|*|Y0| > 2*|X1|*|Y1|
    ClassBalance,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::HalfDegree => "deg(y) >= (|X|+|Y|)/2",
            Condition::SlackSize => "|X| >= |Y| + 2m",
            Condition::SlackDegree => "deg(y) >= |X| - m",
            Condition::MoreXThanY => "(i) |X| > |Y|",
            Condition::ClassBalance => "(ii) X1 = Y1 = {} or |X0||Y0| > 2|X1||Y1|",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("Y is empty")]
    EmptyY,
    #[error("precondition violated: {condition}{}", witness.map(|v| format!(" (witness y = {v})")).unwrap_or_default())]
    PreconditionViolated { condition: Condition, witness: Option<Vertex> },
    #[error("both sides need at least {need} vertices, got |X| = {x}, |Y| = {y}")]
    SidesTooSmall { need: usize, x: usize, y: usize },
    #[error("path lengths k and l must differ")]
    EqualLengths,
    #[error("invalid view: {0}")]
    InvalidView(String),
    #[error("construction invariant broken: {0}")]
    Internal(&'static str),
}

fn violated(condition: Condition, witness: Option<Vertex>) -> BipartiteError {
    BipartiteError::PreconditionViolated { condition, witness }
}

/// A bipartite graph on `X ∪ Y`, usually the edges of one colour between
/// two disjoint vertex sets of a colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteView {
    xs: Vec<Vertex>,
    ys: Vec<Vertex>,
    /// row per y, column per x
    adj: Vec<bool>,
    colour: Colour,
    /// Slack parameter for [`decompose`].
    pub m: usize,
}

/// Degree classes of a view: `X0` are the x adjacent to all of `Y`,
/// `Y0` the y adjacent to all of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClasses {
    pub x0: Vec<Vertex>,
    pub x1: Vec<Vertex>,
    pub y0: Vec<Vertex>,
    pub y1: Vec<Vertex>,
}

impl DegreeClasses {
    /// `X1 = Y1 = ∅`, or `|X0|·|Y0| > 2·|X1|·|Y1|`.
    pub fn balanced(&self) -> bool {
        (self.x1.is_empty() && self.y1.is_empty()) || self.x0.len() * self.y0.len() > 2 * self.x1.len() * self.y1.len()
    }
}

/// Index-level classes over an active subset of X.
struct Classes {
    x0: Vec<usize>,
    x1: Vec<usize>,
    y0: Vec<usize>,
    y1: Vec<usize>,
}

impl BipartiteView {
    /// Synthetic view: `neighbours[j]` lists the x-vertices adjacent to `ys[j]`.
    pub fn from_lists(
        xs: Vec<Vertex>,
        ys: Vec<Vertex>,
        neighbours: &[Vec<Vertex>],
        colour: Colour,
        m: usize,
    ) -> Result<Self, BipartiteError> {
        if neighbours.len() != ys.len() {
            return Err(BipartiteError::InvalidView("one neighbour list per y required".into()));
        }
        check_disjoint(&xs, &ys)?;
        let mut adj = vec![false; xs.len() * ys.len()];
        for (j, list) in neighbours.iter().enumerate() {
            for v in list {
                let i = xs
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| BipartiteError::InvalidView(format!("{v} is not in X")))?;
                adj[j * xs.len() + i] = true;
            }
        }
        Ok(BipartiteView { xs, ys, adj, colour, m })
    }

    /// The `colour` edges of `g` between `xs` and `ys`. Both sides are sorted.
    pub fn from_colouring(
        g: &Colouring,
        xs: &[Vertex],
        ys: &[Vertex],
        colour: Colour,
        m: usize,
    ) -> Result<Self, BipartiteError> {
        let mut xs = xs.to_vec();
        let mut ys = ys.to_vec();
        xs.sort_unstable();
        ys.sort_unstable();
        check_disjoint(&xs, &ys)?;
        if let Some(&v) = xs.iter().chain(&ys).find(|&&v| v == 0 || v > g.n()) {
            return Err(BipartiteError::InvalidView(format!("vertex {v} out of range")));
        }
        let mut adj = Vec::with_capacity(xs.len() * ys.len());
        for &y in &ys {
            adj.extend(xs.iter().map(|&x| g.colour(x, y) == colour));
        }
        Ok(BipartiteView { xs, ys, adj, colour, m })
    }

    pub fn xs(&self) -> &[Vertex] {
        &self.xs
    }

    pub fn ys(&self) -> &[Vertex] {
        &self.ys
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    pub fn with_slack(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    #[inline]
    fn edge(&self, xi: usize, yi: usize) -> bool {
        self.adj[yi * self.xs.len() + xi]
    }

    /// Whether the vertices `x` and `y` are adjacent in the view.
    pub fn adjacent(&self, x: Vertex, y: Vertex) -> bool {
        match (self.xs.iter().position(|&v| v == x), self.ys.iter().position(|&v| v == y)) {
            (Some(i), Some(j)) => self.edge(i, j),
            _ => false,
        }
    }

    pub fn degree_of_y(&self, y: Vertex) -> Option<usize> {
        let j = self.ys.iter().position(|&v| v == y)?;
        Some((0..self.xs.len()).filter(|&i| self.edge(i, j)).count())
    }

    fn y_degree_within(&self, yi: usize, active: &[bool]) -> usize {
        (0..self.xs.len()).filter(|&i| active[i] && self.edge(i, yi)).count()
    }

    pub fn degree_classes(&self) -> DegreeClasses {
        let active = vec![true; self.xs.len()];
        let c = self.classes_within(&active);
        DegreeClasses {
            x0: c.x0.iter().map(|&i| self.xs[i]).collect(),
            x1: c.x1.iter().map(|&i| self.xs[i]).collect(),
            y0: c.y0.iter().map(|&j| self.ys[j]).collect(),
            y1: c.y1.iter().map(|&j| self.ys[j]).collect(),
        }
    }

    fn classes_within(&self, active: &[bool]) -> Classes {
        let ny = self.ys.len();
        let act: Vec<usize> = (0..self.xs.len()).filter(|&i| active[i]).collect();
        let (mut x0, mut x1) = (Vec::new(), Vec::new());
        for &i in &act {
            if (0..ny).all(|j| self.edge(i, j)) {
                x0.push(i);
            } else {
                x1.push(i);
            }
        }
        let (mut y0, mut y1) = (Vec::new(), Vec::new());
        for j in 0..ny {
            if act.iter().all(|&i| self.edge(i, j)) {
                y0.push(j);
            } else {
                y1.push(j);
            }
        }
        Classes { x0, x1, y0, y1 }
    }

    fn path_from(&self, seq: &[Side]) -> Path {
        Path::new(self.colour, seq.iter().map(|s| self.vertex(*s)).collect())
    }

    fn vertex(&self, s: Side) -> Vertex {
        match s {
            Side::X(i) => self.xs[i],
            Side::Y(j) => self.ys[j],
        }
    }

    /// Checks that `p` alternates sides and uses only view edges.
    pub fn is_alternating_path(&self, p: &Path) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut prev: Option<Side> = None;
        for &v in &p.vertices {
            if !seen.insert(v) {
                return false;
            }
            let cur = if let Some(i) = self.xs.iter().position(|&x| x == v) {
                Side::X(i)
            } else if let Some(j) = self.ys.iter().position(|&y| y == v) {
                Side::Y(j)
            } else {
                return false;
            };
            if let Some(pr) = prev {
                let ok = match (pr, cur) {
                    (Side::X(i), Side::Y(j)) | (Side::Y(j), Side::X(i)) => self.edge(i, j),
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
            prev = Some(cur);
        }
        true
    }
}

fn check_disjoint(xs: &[Vertex], ys: &[Vertex]) -> Result<(), BipartiteError> {
    let xset: std::collections::HashSet<_> = xs.iter().collect();
    if xset.len() != xs.len() || ys.iter().collect::<std::collections::HashSet<_>>().len() != ys.len() {
        return Err(BipartiteError::InvalidView("repeated vertex on one side".into()));
    }
    if let Some(v) = ys.iter().find(|v| xset.contains(v)) {
        return Err(BipartiteError::InvalidView(format!("vertex {v} on both sides")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    X(usize),
    Y(usize),
}

/// A path on `2|Y|` vertices alternating `x y x y …`, starting in X and
/// covering all of Y, when every y has degree at least `(|X|+|Y|)/2`.
pub fn long_path(v: &BipartiteView) -> Result<Path, BipartiteError> {
    let active = vec![true; v.xs.len()];
    let seq = long_path_within(v, &active)?;
    Ok(v.path_from(&seq))
}

fn long_path_within(v: &BipartiteView, active: &[bool]) -> Result<Vec<Side>, BipartiteError> {
    let ny = v.ys.len();
    if ny == 0 {
        return Err(BipartiteError::EmptyY);
    }
    let nx = active.iter().filter(|&&a| a).count();
    for j in 0..ny {
        if 2 * v.y_degree_within(j, active) < nx + ny {
            return Err(violated(Condition::HalfDegree, Some(v.ys[j])));
        }
    }
    let mut used = vec![false; v.xs.len()];
    let mut seq = Vec::with_capacity(2 * ny);
    let first = (0..v.xs.len())
        .find(|&i| active[i] && v.edge(i, 0))
        .ok_or(BipartiteError::Internal("first y has no neighbour"))?;
    used[first] = true;
    seq.push(Side::X(first));
    seq.push(Side::Y(0));
    for j in 1..ny {
        // y_{j-1} and y_j share more than j neighbours, so an unused one exists.
        let x = (0..v.xs.len())
            .find(|&i| active[i] && !used[i] && v.edge(i, j - 1) && v.edge(i, j))
            .ok_or(BipartiteError::Internal("no unused common neighbour"))?;
        used[x] = true;
        seq.push(Side::X(x));
        seq.push(Side::Y(j));
    }
    Ok(seq)
}

/// Repeatedly peels off [`long_path`]s until at most `|Y| + 2m` vertices of X
/// remain. Returns at most `⌊|X|/|Y|⌋` paths covering all of Y.
pub fn decompose(v: &BipartiteView) -> Result<Vec<Path>, BipartiteError> {
    let (nx, ny, m) = (v.xs.len(), v.ys.len(), v.m);
    if ny == 0 {
        return Err(BipartiteError::EmptyY);
    }
    if nx < ny + 2 * m {
        return Err(violated(Condition::SlackSize, None));
    }
    let all = vec![true; nx];
    for j in 0..ny {
        if v.y_degree_within(j, &all) + m < nx {
            return Err(violated(Condition::SlackDegree, Some(v.ys[j])));
        }
    }
    let mut active = all;
    let mut remaining = nx;
    let mut paths = Vec::new();
    loop {
        let seq = long_path_within(v, &active).map_err(|e| match e {
            BipartiteError::PreconditionViolated { .. } => {
                BipartiteError::Internal("half-degree bound lost after deletion")
            }
            e => e,
        })?;
        for s in &seq {
            if let Side::X(i) = s {
                active[*i] = false;
            }
        }
        remaining -= ny;
        paths.push(v.path_from(&seq));
        if remaining <= ny + 2 * m {
            break;
        }
    }
    Ok(paths)
}

/// Covers every vertex of the view with at most `⌈|X|/(|Y|+1)⌉` paths,
/// given `|X| > |Y|` and balanced degree classes.
pub fn decompose_full(v: &BipartiteView) -> Result<Vec<Path>, BipartiteError> {
    let (nx, ny) = (v.xs.len(), v.ys.len());
    if nx <= ny {
        return Err(violated(Condition::MoreXThanY, None));
    }
    let mut active = vec![true; nx];
    let top = v.classes_within(&active);
    let top_balanced =
        (top.x1.is_empty() && top.y1.is_empty()) || top.x0.len() * top.y0.len() > 2 * top.x1.len() * top.y1.len();
    if !top_balanced {
        return Err(violated(Condition::ClassBalance, None));
    }

    let mut paths = Vec::new();
    loop {
        let act: Vec<usize> = (0..nx).filter(|&i| active[i]).collect();
        if act.is_empty() {
            break;
        }
        let c = v.classes_within(&active);
        if act.len() <= ny {
            let seq = single_path_over(v, &c)?;
            paths.push(v.path_from(&seq));
            break;
        }
        if c.x1.is_empty() && c.y1.is_empty() {
            paths.extend(complete_cover(v, &act).iter().map(|s| v.path_from(s)));
            break;
        }
        if c.x0.len() * c.y0.len() <= 2 * c.x1.len() * c.y1.len() || c.x0.len() <= c.y1.len() {
            return Err(BipartiteError::Internal("degree classes unbalanced during recursion"));
        }

        // P: x y x … x alternating X0 / Y1, both ends in X0.
        let mut seq = Vec::with_capacity(2 * ny + 1);
        for (k, &j) in c.y1.iter().enumerate() {
            seq.push(Side::X(c.x0[k]));
            seq.push(Side::Y(j));
        }
        seq.push(Side::X(c.x0[c.y1.len()]));
        // Q: y0 x y0 x … through X \ V(P), deficient vertices first.
        let rest = c.x1.iter().chain(&c.x0[c.y1.len() + 1..]);
        for (&j, &i) in c.y0.iter().zip(rest) {
            seq.push(Side::Y(j));
            seq.push(Side::X(i));
        }
        for s in &seq {
            if let Side::X(i) = s {
                active[*i] = false;
            }
        }
        paths.push(v.path_from(&seq));
    }
    Ok(paths)
}

/// Paths `x y x … x` over consecutive chunks of `|Y|+1` active x-vertices.
/// Only valid when every active x is adjacent to every y.
fn complete_cover(v: &BipartiteView, act: &[usize]) -> Vec<Vec<Side>> {
    act.chunks(v.ys.len() + 1)
        .map(|chunk| {
            let mut seq = Vec::with_capacity(2 * chunk.len());
            for (k, &i) in chunk.iter().enumerate() {
                if k > 0 {
                    seq.push(Side::Y(k - 1));
                }
                seq.push(Side::X(i));
            }
            seq
        })
        .collect()
}

/// One path through every active x (at most |Y| of them), deficient ones
/// first, linking consecutive x's through the lowest unused common neighbour.
fn single_path_over(v: &BipartiteView, c: &Classes) -> Result<Vec<Side>, BipartiteError> {
    let order: Vec<usize> = c.x1.iter().chain(&c.x0).copied().collect();
    let mut used = vec![false; v.ys.len()];
    let mut seq = vec![Side::X(order[0])];
    for w in order.windows(2) {
        let j = (0..v.ys.len())
            .find(|&j| !used[j] && v.edge(w[0], j) && v.edge(w[1], j))
            .ok_or(BipartiteError::Internal("no linking vertex for final path"))?;
        used[j] = true;
        seq.push(Side::Y(j));
        seq.push(Side::X(w[1]));
    }
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyOutcome {
    RedPath(Path),
    BluePath(Path),
}

impl RamseyOutcome {
    pub fn path(&self) -> &Path {
        match self {
            RamseyOutcome::RedPath(p) | RamseyOutcome::BluePath(p) => p,
        }
    }
}

/// Combined vertex count up to which the exact subset search is used directly.
pub const EXACT_ALTERNATING_LIMIT: usize = 20;

/// In the complete bipartite graph on the view's sides, with view edges
/// read as red and non-edges as blue, finds a red path with at least `k`
/// edges or a blue path with at least `l` edges.
pub fn ramsey_path(v: &BipartiteView, k: usize, l: usize) -> Result<RamseyOutcome, BipartiteError> {
    if k == l {
        return Err(BipartiteError::EqualLengths);
    }
    let need = (k + l).div_ceil(2);
    if v.xs.len() < need || v.ys.len() < need {
        return Err(BipartiteError::SidesTooSmall { need, x: v.xs.len(), y: v.ys.len() });
    }
    let red = |i: usize, j: usize| v.edge(i, j);
    let blue = |i: usize, j: usize| !v.edge(i, j);
    let wrap = |colour: Colour, seq: Vec<Side>| {
        let p = Path::new(colour, seq.iter().map(|s| v.vertex(*s)).collect());
        match colour {
            Colour::Red => RamseyOutcome::RedPath(p),
            Colour::Blue => RamseyOutcome::BluePath(p),
        }
    };

    if v.xs.len() + v.ys.len() <= EXACT_ALTERNATING_LIMIT {
        let r = longest_alternating_exact(v.xs.len(), v.ys.len(), red);
        if r.len() > k {
            return Ok(wrap(Colour::Red, r));
        }
        let b = longest_alternating_exact(v.xs.len(), v.ys.len(), blue);
        if b.len() > l {
            return Ok(wrap(Colour::Blue, b));
        }
        return Err(BipartiteError::Internal("neither colour reached its length"));
    }

    let r = alternating_heuristic(v.xs.len(), v.ys.len(), red);
    if r.len() > k {
        return Ok(wrap(Colour::Red, r));
    }
    let b = alternating_heuristic(v.xs.len(), v.ys.len(), blue);
    if b.len() > l {
        return Ok(wrap(Colour::Blue, b));
    }
    if let Some(r) = alternating_search(v.xs.len(), v.ys.len(), red, k) {
        return Ok(wrap(Colour::Red, r));
    }
    if let Some(b) = alternating_search(v.xs.len(), v.ys.len(), blue, l) {
        return Ok(wrap(Colour::Blue, b));
    }
    Err(BipartiteError::Internal("neither colour reached its length"))
}

/// Long alternating path in the view's own edges, by greedy growth with
/// rotations. No optimality claim.
pub fn long_alternating_path(v: &BipartiteView) -> Path {
    let seq = alternating_heuristic(v.xs.len(), v.ys.len(), |i, j| v.edge(i, j));
    v.path_from(&seq)
}

// Combined indexing: 0..nx are X, nx..nx+ny are Y.
fn side_of(a: usize, nx: usize) -> Side {
    if a < nx {
        Side::X(a)
    } else {
        Side::Y(a - nx)
    }
}

fn combined_edge(a: usize, b: usize, nx: usize, has: &impl Fn(usize, usize) -> bool) -> bool {
    match (side_of(a, nx), side_of(b, nx)) {
        (Side::X(i), Side::Y(j)) | (Side::Y(j), Side::X(i)) => has(i, j),
        _ => false,
    }
}

/// Exact longest alternating path by subset dynamic programming over
/// endpoint sets. `nx + ny` must not exceed [`EXACT_ALTERNATING_LIMIT`].
fn longest_alternating_exact(nx: usize, ny: usize, has: impl Fn(usize, usize) -> bool) -> Vec<Side> {
    let t = nx + ny;
    assert!(t <= EXACT_ALTERNATING_LIMIT);
    if t == 0 {
        return Vec::new();
    }
    let adj: Vec<u32> =
        (0..t).map(|a| (0..t).filter(|&b| combined_edge(a, b, nx, &has)).fold(0u32, |m, b| m | 1 << b)).collect();
    let size = 1usize << t;
    let mut ends = vec![0u32; size];
    for a in 0..t {
        ends[1 << a] = 1 << a;
    }
    let mut best = 1usize;
    for mask in 1..size {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        if mask.count_ones() > (best as u32).count_ones() {
            best = mask;
        }
        let mut bits = e;
        while bits != 0 {
            let a = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut ext = adj[a] & !(mask as u32);
            while ext != 0 {
                let b = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | 1 << b] |= 1 << b;
            }
        }
    }
    // Walk back from the lowest end of the best mask.
    let mut mask = best;
    let mut cur = ends[mask].trailing_zeros() as usize;
    let mut rev = vec![cur];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << cur);
        let cand = ends[prev_mask] & adj[cur];
        let prev = cand.trailing_zeros() as usize;
        rev.push(prev);
        mask = prev_mask;
        cur = prev;
    }
    rev.reverse();
    rev.into_iter().map(|a| side_of(a, nx)).collect()
}

/// Exhaustive search for an alternating path with at least `target` edges.
fn alternating_search(nx: usize, ny: usize, has: impl Fn(usize, usize) -> bool, target: usize) -> Option<Vec<Side>> {
    fn dfs(
        path: &mut Vec<usize>,
        used: &mut [bool],
        nx: usize,
        target: usize,
        has: &impl Fn(usize, usize) -> bool,
    ) -> bool {
        if path.len() > target {
            return true;
        }
        let a = *path.last().unwrap();
        for b in 0..used.len() {
            if !used[b] && combined_edge(a, b, nx, has) {
                used[b] = true;
                path.push(b);
                if dfs(path, used, nx, target, has) {
                    return true;
                }
                path.pop();
                used[b] = false;
            }
        }
        false
    }
    let t = nx + ny;
    for s in 0..t {
        let mut used = vec![false; t];
        used[s] = true;
        let mut path = vec![s];
        if dfs(&mut path, &mut used, nx, target, &has) {
            return Some(path.into_iter().map(|a| side_of(a, nx)).collect());
        }
    }
    None
}

fn alternating_heuristic(nx: usize, ny: usize, has: impl Fn(usize, usize) -> bool) -> Vec<Side> {
    let t = nx + ny;
    if t == 0 {
        return Vec::new();
    }
    let adj = |a: usize, b: usize| combined_edge(a, b, nx, &has);
    crate::rotation::grow_and_rotate(t, adj).into_iter().map(|a| side_of(a, nx)).collect()
}
