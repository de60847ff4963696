//! Colourings of complete graphs, monochromatic paths, and path covers.
//!
//! Vertices are 1-based ids `1..=n` on every public interface.

use std::fmt;

use thiserror::Error;

/// A vertex id in `1..=n`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("invalid edge ({u}, {v}) in K_{n}")]
    InvalidEdge { u: Vertex, v: Vertex, n: usize },
    #[error("a colouring needs at least one vertex")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub const BOTH: [Colour; 2] = [Colour::Red, Colour::Blue];

    pub fn complement(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    /// Single-letter tag used by the text formats.
    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Colour> {
        match c {
            'R' => Some(Colour::Red),
            'B' => Some(Colour::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colour::Red => f.write_str("Red"),
            Colour::Blue => f.write_str("Blue"),
        }
    }
}

/// A red/blue colouring of the edges of `K_n`.
///
/// Stored as one bit row per vertex (bit set = red), kept symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    n: usize,
    words: usize,
    red: Vec<u64>,
}

impl Colouring {
    /// Every edge gets `colour`.
    pub fn monochromatic(n: usize, colour: Colour) -> Result<Self, CoreError> {
        if n == 0 {
            return Err(CoreError::Empty);
        }
        let mut g = Self::blank(n);
        if colour == Colour::Red {
            for u in 1..=n {
                for v in u + 1..=n {
                    g.set_raw(u, v, Colour::Red);
                }
            }
        }
        Ok(g)
    }

    /// Builds a colouring by asking `f(u, v)` for every pair `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(Vertex, Vertex) -> Colour) -> Result<Self, CoreError> {
        if n == 0 {
            return Err(CoreError::Empty);
        }
        let mut g = Self::blank(n);
        for u in 1..=n {
            for v in u + 1..=n {
                let c = f(u, v);
                g.set_raw(u, v, c);
            }
        }
        Ok(g)
    }

    /// Upper-triangle colours in row-major order: (1,2), (1,3), …, (n-1,n).
    pub fn from_upper_triangle(n: usize, colours: &[Colour]) -> Result<Self, CoreError> {
        if colours.len() != n * n.saturating_sub(1) / 2 {
            return Err(CoreError::InvalidEdge { u: 0, v: 0, n });
        }
        let mut it = colours.iter();
        Self::from_fn(n, |_, _| *it.next().unwrap())
    }

    fn blank(n: usize) -> Self {
        let words = n.div_ceil(64);
        Colouring { n, words, red: vec![0; words * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Checked lookup.
    pub fn colour_of(&self, u: Vertex, v: Vertex) -> Result<Colour, CoreError> {
        if u == v || u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(CoreError::InvalidEdge { u, v, n: self.n });
        }
        Ok(self.colour(u, v))
    }

    /// Unchecked lookup for hot loops; `u != v` and both in range.
    #[inline]
    pub fn colour(&self, u: Vertex, v: Vertex) -> Colour {
        debug_assert!(u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n);
        let (r, c) = (u - 1, v - 1);
        if self.red[r * self.words + c / 64] >> (c % 64) & 1 == 1 {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    #[inline]
    pub fn has(&self, u: Vertex, v: Vertex, colour: Colour) -> bool {
        u != v && self.colour(u, v) == colour
    }

    pub fn set(&mut self, u: Vertex, v: Vertex, colour: Colour) -> Result<(), CoreError> {
        self.colour_of(u, v)?;
        self.set_raw(u, v, colour);
        Ok(())
    }

    pub fn flip(&mut self, u: Vertex, v: Vertex) -> Result<(), CoreError> {
        let c = self.colour_of(u, v)?;
        self.set_raw(u, v, c.complement());
        Ok(())
    }

    fn set_raw(&mut self, u: Vertex, v: Vertex, colour: Colour) {
        let (a, b) = (u - 1, v - 1);
        for (r, c) in [(a, b), (b, a)] {
            let w = &mut self.red[r * self.words + c / 64];
            match colour {
                Colour::Red => *w |= 1 << (c % 64),
                Colour::Blue => *w &= !(1 << (c % 64)),
            }
        }
    }

    /// Upper-triangle colours in row-major order.
    pub fn upper_triangle(&self) -> impl Iterator<Item = Colour> + '_ {
        (1..=self.n).flat_map(move |u| (u + 1..=self.n).map(move |v| self.colour(u, v)))
    }

    /// Neighbours of `u` in `colour`, ascending.
    pub fn neighbours(&self, u: Vertex, colour: Colour) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.n).filter(move |&v| self.has(u, v, colour))
    }

    /// The colouring induced on `keep` (ascending ids), re-indexed to `1..=keep.len()`.
    /// `keep[i]` becomes vertex `i + 1`.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Colouring, CoreError> {
        Colouring::from_fn(keep.len(), |a, b| self.colour(keep[a - 1], keep[b - 1]))
    }

    /// Swaps red and blue on every edge.
    pub fn complemented(&self) -> Colouring {
        let mut g = self.clone();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                let c = self.colour(u, v).complement();
                g.set_raw(u, v, c);
            }
        }
        g
    }
}

impl fmt::Debug for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.upper_triangle().map(Colour::letter).collect();
        write!(f, "Colouring(n={}, {s})", self.n)
    }
}

/// A sequence of distinct vertices labelled with a colour. A single vertex
/// is a path of length zero of either colour; the empty path has no vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub colour: Colour,
    pub vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(colour: Colour, vertices: Vec<Vertex>) -> Self {
        Path { colour, vertices }
    }

    pub fn single(colour: Colour, v: Vertex) -> Self {
        Path { colour, vertices: vec![v] }
    }

    pub fn empty(colour: Colour) -> Self {
        Path { colour, vertices: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of edges.
    pub fn edges(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.vertices.last().copied()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { colour: self.colour, vertices }
    }

    /// First problem found scanning the vertices in order, if any.
    pub fn check(&self, g: &Colouring) -> Option<(FailureKind, Detail)> {
        let mut seen = vec![false; g.n() + 1];
        for (i, &v) in self.vertices.iter().enumerate() {
            if v == 0 || v > g.n() {
                return Some((FailureKind::OutOfRangeVertex, Detail::Vertex(v)));
            }
            if seen[v] {
                return Some((FailureKind::DuplicateVertexInPath, Detail::Vertex(v)));
            }
            seen[v] = true;
            if i > 0 {
                let u = self.vertices[i - 1];
                if g.colour(u, v) != self.colour {
                    return Some((FailureKind::WrongColourEdge, Detail::Edge(u, v)));
                }
            }
        }
        None
    }

    pub fn is_valid(&self, g: &Colouring) -> bool {
        self.check(g).is_none()
    }
}

/// A family of same-coloured paths meant to cover `1..=n`. Paths may overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCover {
    pub colour: Colour,
    pub n: usize,
    pub paths: Vec<Path>,
}

impl PathCover {
    pub fn new(colour: Colour, n: usize, paths: Vec<Path>) -> Self {
        PathCover { colour, n, paths }
    }

    /// One singleton per vertex. Always valid.
    pub fn singletons(colour: Colour, n: usize) -> Self {
        PathCover { colour, n, paths: (1..=n).map(|v| Path::single(colour, v)).collect() }
    }

    /// Number of paths.
    pub fn size(&self) -> usize {
        self.paths.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureKind {
    None,
    MissingVertex,
    DuplicateVertexInPath,
    WrongColourEdge,
    ColourMismatchAcrossPaths,
    OutOfRangeVertex,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detail {
    None,
    Vertex(Vertex),
    Edge(Vertex, Vertex),
    /// Index of the offending path within the cover.
    Path(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverReport {
    pub valid: bool,
    pub failure_kind: FailureKind,
    pub detail: Detail,
}

impl CoverReport {
    fn ok() -> Self {
        CoverReport { valid: true, failure_kind: FailureKind::None, detail: Detail::None }
    }

    fn fail(kind: FailureKind, detail: Detail) -> Self {
        CoverReport { valid: false, failure_kind: kind, detail }
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        write!(f, "invalid: {}", self.failure_kind)?;
        match self.detail {
            Detail::None => Ok(()),
            Detail::Vertex(v) => write!(f, " (vertex {v})"),
            Detail::Edge(u, v) => write!(f, " (edge {u}-{v})"),
            Detail::Path(i) => write!(f, " (path #{})", i + 1),
        }
    }
}

/// Checks a cover against `g`, reporting the first violation in scan order
/// (paths in order, vertices in order, then the lowest uncovered vertex).
pub fn validate_cover(g: &Colouring, cover: &PathCover) -> CoverReport {
    let mut covered = vec![false; g.n() + 1];
    for (i, p) in cover.paths.iter().enumerate() {
        if p.colour != cover.colour {
            return CoverReport::fail(FailureKind::ColourMismatchAcrossPaths, Detail::Path(i));
        }
        if let Some((kind, detail)) = p.check(g) {
            return CoverReport::fail(kind, detail);
        }
        for &v in &p.vertices {
            covered[v] = true;
        }
    }
    match (1..=g.n()).find(|&v| !covered[v]) {
        Some(v) => CoverReport::fail(FailureKind::MissingVertex, Detail::Vertex(v)),
        None => CoverReport::ok(),
    }
}
