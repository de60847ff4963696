//! Exact minimum same-colour path covers for small `n`.
//!
//! Works on vertex subsets as bitmasks (bit `v-1` for vertex `v`). First a
//! Hamiltonian-path DP over (subset, endpoint) finds every traceable set, then
//! a set-cover DP over subsets picks the fewest traceable sets whose union
//! is everything. Paths may overlap, so the cover DP works with unions
//! rather than partitions.

use thiserror::Error;

use crate::model::{Colour, Colouring, Path, PathCover, Vertex};

pub const DEFAULT_ORACLE_THRESHOLD: usize = 14;
/// Hard ceiling for any configured threshold (2^n-sized tables).
pub const MAX_ORACLE_THRESHOLD: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle threshold {threshold}")]
    TooLarge { n: usize, threshold: usize },
}

/// Every vertex subset that carries a Hamiltonian path in one colour.
#[derive(Debug, Clone)]
pub struct TraceableFamily {
    pub colour: Colour,
    n: usize,
    /// `ends[mask]`: bitmask of vertices where a Hamiltonian path of `mask` can end.
    ends: Vec<u32>,
    adj: Vec<u32>,
}

impl TraceableFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_traceable(&self, mask: u32) -> bool {
        mask != 0 && self.ends[mask as usize] != 0
    }

    /// All traceable masks, ascending.
    pub fn sets(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.ends.len() as u32).filter(|&m| self.ends[m as usize] != 0)
    }

    /// A Hamiltonian path of `mask`, ending at its lowest possible endpoint
    /// and stepping back through lowest-id predecessors.
    pub fn witness(&self, mask: u32) -> Option<Path> {
        if !self.is_traceable(mask) {
            return None;
        }
        let mut m = mask;
        let mut cur = self.ends[m as usize].trailing_zeros();
        let mut rev = vec![cur as Vertex + 1];
        while m.count_ones() > 1 {
            let prev_mask = m & !(1 << cur);
            let prev = (self.ends[prev_mask as usize] & self.adj[cur as usize]).trailing_zeros();
            rev.push(prev as Vertex + 1);
            m = prev_mask;
            cur = prev;
        }
        rev.reverse();
        Some(Path::new(self.colour, rev))
    }
}

/// The exact answer: optimum size, its colour, and a witness cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub colour: Colour,
    pub witness: PathCover,
}

/// Exact solver with a size guard.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub threshold: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { threshold: DEFAULT_ORACLE_THRESHOLD }
    }
}

impl Oracle {
    pub fn new(threshold: usize) -> Self {
        Oracle { threshold: threshold.min(MAX_ORACLE_THRESHOLD) }
    }

    fn guard(&self, g: &Colouring) -> Result<(), OracleError> {
        if g.n() > self.threshold {
            return Err(OracleError::TooLarge { n: g.n(), threshold: self.threshold });
        }
        Ok(())
    }

    pub fn traceable_sets(&self, g: &Colouring, gamma: Colour) -> Result<TraceableFamily, OracleError> {
        self.guard(g)?;
        let n = g.n();
        let adj: Vec<u32> = (1..=n).map(|u| g.neighbours(u, gamma).fold(0u32, |m, v| m | 1 << (v - 1))).collect();
        let size = 1usize << n;
        let mut ends = vec![0u32; size];
        for v in 0..n {
            ends[1 << v] = 1 << v;
        }
        for mask in 1..size {
            let mut e = ends[mask];
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                let mut ext = adj[v] & !(mask as u32);
                while ext != 0 {
                    let u = ext.trailing_zeros();
                    ext &= ext - 1;
                    ends[mask | 1 << u] |= 1 << u;
                }
            }
        }
        Ok(TraceableFamily { colour: gamma, n, ends, adj })
    }

    /// Fewest `gamma` paths whose union is `1..=n`, with a witness.
    pub fn min_cover_colour(&self, g: &Colouring, gamma: Colour) -> Result<(usize, PathCover), OracleError> {
        let fam = self.traceable_sets(g, gamma)?;
        let n = g.n();
        let size = 1usize << n;

        // rep[t]: lowest traceable superset of t, or 0 if none.
        let mut rep = vec![0u32; size];
        for m in fam.sets() {
            rep[m as usize] = m;
        }
        for bit in 0..n {
            for t in (0..size).rev() {
                if t & 1 << bit == 0 {
                    let up = rep[t | 1 << bit];
                    if up != 0 && (rep[t] == 0 || up < rep[t]) {
                        rep[t] = up;
                    }
                }
            }
        }

        // cost[s]: fewest traceable sets covering s. Some path must cover
        // the lowest vertex of s, so only parts containing it are tried.
        let mut cost = vec![u8::MAX; size];
        let mut choice = vec![0u32; size];
        cost[0] = 0;
        for s in 1..size {
            let low = 1u32 << (s as u32).trailing_zeros();
            let rest = s as u32 & !low;
            let mut sub = rest;
            let mut best = u8::MAX;
            let mut pick = 0u32;
            loop {
                let t = sub | low;
                if rep[t as usize] != 0 {
                    let c = cost[(s as u32 & !t) as usize];
                    if c < best {
                        best = c;
                        pick = t;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            cost[s] = best + 1;
            choice[s] = pick;
        }

        let mut paths = Vec::new();
        let mut s = (size - 1) as u32;
        while s != 0 {
            let t = choice[s as usize];
            paths.push(fam.witness(rep[t as usize]).expect("representative is traceable"));
            s &= !t;
        }
        Ok((paths.len(), PathCover::new(gamma, n, paths)))
    }

    /// Minimum over both colours; ties go to red.
    pub fn exact_f(&self, g: &Colouring) -> Result<OracleResult, OracleError> {
        let (rv, rc) = self.min_cover_colour(g, Colour::Red)?;
        let (bv, bc) = self.min_cover_colour(g, Colour::Blue)?;
        Ok(if bv < rv {
            OracleResult { value: bv, colour: Colour::Blue, witness: bc }
        } else {
            OracleResult { value: rv, colour: Colour::Red, witness: rc }
        })
    }
}

pub fn traceable_sets(g: &Colouring, gamma: Colour) -> Result<TraceableFamily, OracleError> {
    Oracle::default().traceable_sets(g, gamma)
}

pub fn min_cover_colour(g: &Colouring, gamma: Colour) -> Result<(usize, PathCover), OracleError> {
    Oracle::default().min_cover_colour(g, gamma)
}

pub fn exact_f(g: &Colouring) -> Result<OracleResult, OracleError> {
    Oracle::default().exact_f(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::extremal;
    use crate::model::validate_cover;

    #[test]
    fn traceable_sets_of_k3() {
        let g = Colouring::monochromatic(3, Colour::Red).unwrap();
        assert_eq!(traceable_sets(&g, Colour::Red).unwrap().sets().count(), 7);
        assert_eq!(traceable_sets(&g, Colour::Blue).unwrap().sets().collect::<Vec<_>>(), vec![1, 2, 4]);

        let g = Colouring::from_fn(3, |u, v| if (u, v) == (1, 3) { Colour::Blue } else { Colour::Red }).unwrap();
        let fam = traceable_sets(&g, Colour::Red).unwrap();
        assert_eq!(fam.sets().collect::<Vec<_>>(), vec![0b001, 0b010, 0b011, 0b100, 0b110, 0b111]);
        assert!(!fam.is_traceable(0b101));
        let w = fam.witness(0b111).unwrap();
        assert!(w.is_valid(&g));
        assert_eq!(w.vertices.len(), 3);
    }

    #[test]
    fn min_cover_on_monochromatic_k4() {
        let g = Colouring::monochromatic(4, Colour::Red).unwrap();
        let (v, c) = min_cover_colour(&g, Colour::Red).unwrap();
        assert_eq!(v, 1);
        assert_eq!(c.paths[0].len(), 4);
        let (v, c) = min_cover_colour(&g, Colour::Blue).unwrap();
        assert_eq!(v, 4);
        assert!(validate_cover(&g, &c).valid);
    }

    #[test]
    fn extremal_values() {
        let g = extremal(4);
        assert_eq!(min_cover_colour(&g, Colour::Red).unwrap().0, 2);
        let r = exact_f(&g).unwrap();
        assert_eq!(r.value, 2);
        assert!(validate_cover(&g, &r.witness).valid);
        assert_eq!(exact_f(&extremal(1)).unwrap().value, 1);
    }

    #[test]
    fn threshold_guard() {
        let g = Colouring::monochromatic(15, Colour::Red).unwrap();
        assert_eq!(exact_f(&g).unwrap_err(), OracleError::TooLarge { n: 15, threshold: 14 });
        assert_eq!(Oracle::new(15).exact_f(&g).unwrap().value, 1);
    }

    #[test]
    fn overlap_can_beat_partition() {
        // Red star K_{1,3} centred at 1: needs 2 overlapping paths
        // (a-1-b, 1-c), but a partition needs 2 as well; with K_{1,4} centred
        // at 1 overlapping cover has 2 paths while partitions need 3.
        let g = Colouring::from_fn(5, |u, _| if u == 1 { Colour::Red } else { Colour::Blue }).unwrap();
        let (v, c) = min_cover_colour(&g, Colour::Red).unwrap();
        assert_eq!(v, 2);
        assert!(validate_cover(&g, &c).valid);
    }
}
