//! Greedy path growth with Pósa-style rotations on an abstract graph.

/// Grows a path in the graph on `0..t` given by `adj`, extending either end
/// and rotating the tail end when stuck. Starts from the lowest-index vertex
/// of maximum degree. Rotation work is capped at roughly `4·t²` adjacency
/// tests.
pub(crate) fn grow_and_rotate(t: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    if t == 0 {
        return Vec::new();
    }
    let start =
        (0..t).max_by_key(|&a| ((0..t).filter(|&b| b != a && adj(a, b)).count(), std::cmp::Reverse(a))).unwrap();
    let mut path = vec![start];
    let mut in_path = vec![false; t];
    in_path[start] = true;
    let mut budget: u64 = 4 * (t as u64) * (t as u64);

    let outside_neighbour = |v: usize, in_path: &[bool]| (0..t).find(|&b| !in_path[b] && adj(v, b));

    loop {
        // Extend the back, then the front.
        let mut extended = false;
        for _ in 0..2 {
            while let Some(b) = outside_neighbour(*path.last().unwrap(), &in_path) {
                in_path[b] = true;
                path.push(b);
                extended = true;
            }
            path.reverse();
        }
        if extended {
            continue;
        }
        if path.len() == t || budget == 0 {
            break;
        }

        // Rotate: end v adjacent to path[i] gives new end path[i + 1].
        let k = path.len();
        let end = path[k - 1];
        let mut rotated = false;
        for i in 0..k.saturating_sub(2) {
            budget = budget.saturating_sub(1);
            if !adj(end, path[i]) {
                continue;
            }
            let new_end = path[i + 1];
            budget = budget.saturating_sub(t as u64);
            if outside_neighbour(new_end, &in_path).is_some() {
                path[i + 1..].reverse();
                rotated = true;
                break;
            }
            if budget == 0 {
                break;
            }
        }
        if !rotated {
            break;
        }
    }
    path
}
