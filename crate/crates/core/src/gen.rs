//! Instance generators: the extremal two-block colouring, seeded random
//! colourings, and hill-climbing for colourings that need many paths.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Colour, Colouring, Vertex};

/// Name and version of the random stream behind [`random_colouring`].
pub const GENERATOR_ID: &str = "chacha8-v1";

/// `⌊√n⌋` by integer search.
pub fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Vertices `1..=n-b` form a blue clique `A`, the last `b = ⌊√n⌋ − 1`
/// vertices form `B`, and every edge meeting `B` is red.
pub fn extremal(n: usize) -> Colouring {
    let a = extremal_a_size(n);
    Colouring::from_fn(n, |u, v| if u <= a && v <= a { Colour::Blue } else { Colour::Red }).expect("n >= 1")
}

/// `|A| = n − ⌊√n⌋ + 1`.
pub fn extremal_a_size(n: usize) -> usize {
    n + 1 - isqrt(n)
}

/// Each edge, in upper-triangle order, is red with probability `p`.
pub fn random_colouring(n: usize, p: f64, seed: u64) -> Colouring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Colouring::from_fn(n, |_, _| if rng.gen::<f64>() < p { Colour::Red } else { Colour::Blue }).expect("n >= 1")
}

/// The `index`-th colouring of `K_n` in binary order: bit `e` of `index`
/// set means upper-triangle edge `e` is red.
pub fn enumerated(n: usize, index: u64) -> Colouring {
    let mut e = 0;
    Colouring::from_fn(n, |_, _| {
        let c = if index >> e & 1 == 1 { Colour::Red } else { Colour::Blue };
        e += 1;
        c
    })
    .expect("n >= 1")
}

/// Outcome of [`adversarial_search`].
#[derive(Debug, Clone)]
pub struct Adversarial {
    pub colouring: Colouring,
    pub score: usize,
    /// Score after every accepted move, per restart, in order.
    pub accepted: Vec<Vec<usize>>,
}

/// Hill-climbing over single-edge flips, seeded from [`extremal`]. Moves
/// that do not lower the score are accepted. Restart `r > 0` perturbs the
/// best colouring so far with `n` random flips, from a stream derived from
/// `(seed, r)`. The returned score never falls below the extremal score.
pub fn adversarial_search(
    n: usize,
    iters: usize,
    restarts: usize,
    seed: u64,
    mut score: impl FnMut(&Colouring) -> usize,
) -> Adversarial {
    let mut best = extremal(n);
    let mut best_score = score(&best);
    let mut accepted = Vec::new();
    if n < 2 {
        return Adversarial { colouring: best, score: best_score, accepted };
    }
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, r as u64));
        let mut cur = best.clone();
        let mut cur_score = best_score;
        if r > 0 {
            for _ in 0..n {
                let (u, v) = random_edge(&mut rng, n);
                cur.flip(u, v).unwrap();
            }
            cur_score = score(&cur);
        }
        let mut trail = vec![cur_score];
        for _ in 0..iters {
            let (u, v) = random_edge(&mut rng, n);
            cur.flip(u, v).unwrap();
            let s = score(&cur);
            if s >= cur_score {
                cur_score = s;
                trail.push(s);
                if s > best_score {
                    best_score = s;
                    best = cur.clone();
                }
            } else {
                cur.flip(u, v).unwrap();
            }
        }
        accepted.push(trail);
    }
    Adversarial { colouring: best, score: best_score, accepted }
}

fn random_edge(rng: &mut ChaCha8Rng, n: usize) -> (Vertex, Vertex) {
    let u = rng.gen_range(1..=n);
    let mut v = rng.gen_range(1..n);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// SplitMix64 finaliser over `seed` and a stream index.
fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Which family an instance comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    Extremal,
    Random {
        p: f64,
    },
    Adversarial {
        iters: usize,
        restarts: usize,
    },
    /// All colourings of `K_n`, indexed by seed.
    Enumerate,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::Extremal => f.write_str("extremal"),
            GenKind::Random { p } => write!(f, "random:{p}"),
            GenKind::Adversarial { iters, restarts } => write!(f, "adversarial:{iters}:{restarts}"),
            GenKind::Enumerate => f.write_str("enumerate"),
        }
    }
}

impl FromStr for GenKind {
    type Err = String;

    /// `extremal`, `random:P`, `adversarial:ITERS[:RESTARTS]`, `enumerate`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize, String> {
            parts[i].parse().map_err(|_| format!("bad number {:?} in generator {s:?}", parts[i]))
        };
        match parts.as_slice() {
            ["extremal"] => Ok(GenKind::Extremal),
            ["enumerate"] => Ok(GenKind::Enumerate),
            ["random", p] => {
                let p: f64 = p.parse().map_err(|_| format!("bad probability {p:?}"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(format!("probability {p} outside [0, 1]"));
                }
                Ok(GenKind::Random { p })
            }
            ["adversarial", _] => Ok(GenKind::Adversarial { iters: num(1)?, restarts: 1 }),
            ["adversarial", _, _] => Ok(GenKind::Adversarial { iters: num(1)?, restarts: num(2)? }),
            _ => Err(format!("unknown generator {s:?}")),
        }
    }
}

/// A generator kind plus instance size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
}

impl GenSpec {
    /// Builds the instance. Adversarial specs score with `score`.
    pub fn build(&self, seed: u64, score: impl FnMut(&Colouring) -> usize) -> Colouring {
        match self.kind {
            GenKind::Extremal => extremal(self.n),
            GenKind::Random { p } => random_colouring(self.n, p, seed),
            GenKind::Adversarial { iters, restarts } => {
                adversarial_search(self.n, iters, restarts, seed, score).colouring
            }
            GenKind::Enumerate => enumerated(self.n, seed),
        }
    }
}
