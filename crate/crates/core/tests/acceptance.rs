//! Acceptance suite. Runs every criterion and prints one line per
//! criterion; exits non-zero if any fails.

use std::collections::HashSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pathcover::bipartite::{decompose, decompose_full, long_path, ramsey_path, BipartiteView, RamseyOutcome};
use pathcover::construct::{maximal_path, rotate_or_extend, two_path_cover, RotationOutcome};
use pathcover::format::{decode, encode};
use pathcover::gen::{enumerated, extremal, isqrt, random_colouring, GenKind};
use pathcover::oracle::Oracle;
use pathcover::sweep::{run_sweep, write_csv, SweepPlan};
use pathcover::{solve, validate_cover, Colour, Colouring, Path, SolverConfig, Vertex};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(r: &mut ChaCha8Rng, from: &[Vertex], size: usize) -> Vec<Vertex> {
    from.choose_multiple(r, size).copied().collect()
}

fn extremal_lower_bound() -> Outcome {
    let oracle = Oracle::new(16);
    let mut got = Vec::new();
    for n in [4usize, 9, 16] {
        let r = oracle.exact_f(&extremal(n)).map_err(|e| e.to_string())?;
        ensure!(validate_cover(&extremal(n), &r.witness).valid, "oracle witness invalid at n={n}");
        ensure!(r.value == isqrt(n), "n={n}: exact_f={} expected {}", r.value, isqrt(n));
        got.push(r.value);
    }
    Ok(format!("values {got:?}"))
}

fn exhaustive_small() -> Outcome {
    let cfg = SolverConfig::default();
    let mut count = 0;
    for n in 3usize..=5 {
        let bound = isqrt(4 * n);
        for idx in 0..1u64 << (n * (n - 1) / 2) {
            let g = enumerated(n, idx);
            let f = pathcover::exact_f(&g).map_err(|e| e.to_string())?.value;
            ensure!(f <= bound, "n={n} index {idx}: exact_f {f} > {bound}");
            let r = solve(&g, &cfg);
            let rep = validate_cover(&g, &r.cover);
            ensure!(rep.valid, "n={n} index {idx}: {rep}");
            ensure!(r.size() >= f, "n={n} index {idx}: solver {} below exact {f}", r.size());
            count += 1;
        }
    }
    Ok(format!("{count} colourings"))
}

fn half_degree_instance(r: &mut ChaCha8Rng) -> BipartiteView {
    let ny = r.gen_range(1..=30);
    let nx = r.gen_range(ny..=30);
    let xs: Vec<Vertex> = (1..=nx).collect();
    let ys: Vec<Vertex> = (nx + 1..=nx + ny).collect();
    let min_deg = (nx + ny).div_ceil(2);
    let lists: Vec<Vec<Vertex>> = (0..ny)
        .map(|_| {
            let d = r.gen_range(min_deg..=nx);
            random_subset(r, &xs, d)
        })
        .collect();
    BipartiteView::from_lists(xs, ys, &lists, Colour::Red, 0).unwrap()
}

fn long_path_suite() -> Outcome {
    let mut r = rng(22);
    for t in 0..1000 {
        let v = half_degree_instance(&mut r);
        let p = long_path(&v).map_err(|e| format!("instance {t}: {e}"))?;
        let ny = v.ys().len();
        ensure!(p.len() == 2 * ny, "instance {t}: {} vertices, want {}", p.len(), 2 * ny);
        ensure!(v.is_alternating_path(&p), "instance {t}: not alternating");
        ensure!(v.xs().contains(&p.vertices[0]), "instance {t}: does not start in X");
        let on: HashSet<_> = p.vertices.iter().collect();
        ensure!(v.ys().iter().all(|y| on.contains(y)), "instance {t}: Y not covered");
    }
    Ok("1000 instances".into())
}

fn decompose_suite() -> Outcome {
    let mut r = rng(23);
    let mut total_paths = 0;
    for t in 0..1000 {
        let ny = r.gen_range(1..=15);
        let m = r.gen_range(0..=8);
        let nx = r.gen_range(ny + 2 * m..=ny + 2 * m + 25);
        let xs: Vec<Vertex> = (1..=nx).collect();
        let ys: Vec<Vertex> = (nx + 1..=nx + ny).collect();
        let lists: Vec<Vec<Vertex>> = (0..ny)
            .map(|_| {
                let d = r.gen_range(nx - m..=nx);
                random_subset(&mut r, &xs, d)
            })
            .collect();
        let v = BipartiteView::from_lists(xs.clone(), ys.clone(), &lists, Colour::Blue, m).unwrap();
        let paths = decompose(&v).map_err(|e| format!("instance {t}: {e}"))?;
        ensure!(!paths.is_empty() && paths.len() <= nx / ny, "instance {t}: {} paths > {}", paths.len(), nx / ny);
        let mut used = HashSet::new();
        for p in &paths {
            ensure!(v.is_alternating_path(p), "instance {t}: path not alternating");
            let on: HashSet<_> = p.vertices.iter().copied().collect();
            ensure!(ys.iter().all(|y| on.contains(y)), "instance {t}: path misses part of Y");
            for x in p.vertices.iter().filter(|x| **x <= nx) {
                ensure!(used.insert(*x), "instance {t}: x {x} used twice");
            }
        }
        let uncovered = nx - used.len();
        ensure!(uncovered <= ny + 2 * m, "instance {t}: {uncovered} X-vertices uncovered > {}", ny + 2 * m);
        total_paths += paths.len();
    }
    Ok(format!("1000 instances, {total_paths} paths"))
}

/// X0 joined to all of Y, Y0 joined to all of X, random edges between X1
/// and Y1 with every x1 and y1 missing at least one partner.
fn class_instance(r: &mut ChaCha8Rng) -> Option<BipartiteView> {
    let nx = r.gen_range(2..=30);
    let ny = r.gen_range(1..nx);
    let x1 = r.gen_range(0..=nx / 2);
    let y1 = if x1 == 0 { 0 } else { r.gen_range(1..=ny) };
    let xs: Vec<Vertex> = (1..=nx).collect();
    let ys: Vec<Vertex> = (nx + 1..=nx + ny).collect();
    let density: f64 = r.gen_range(0.0..0.9);
    let mut adj = vec![vec![true; nx]; ny];
    for row in adj.iter_mut().take(y1) {
        for e in row.iter_mut().take(x1) {
            *e = r.gen_bool(density);
        }
    }
    for row in adj.iter_mut().take(y1) {
        row[r.gen_range(0..x1)] = false;
    }
    for i in 0..x1 {
        if adj[..y1].iter().all(|row| row[i]) {
            adj[r.gen_range(0..y1)][i] = false;
        }
    }
    let lists: Vec<Vec<Vertex>> = adj.iter().map(|row| (0..nx).filter(|&i| row[i]).map(|i| xs[i]).collect()).collect();
    let v = BipartiteView::from_lists(xs, ys, &lists, Colour::Red, 0).unwrap();
    v.degree_classes().balanced().then_some(v)
}

fn decompose_full_suite() -> Outcome {
    let mut r = rng(24);
    let mut kept = 0;
    let mut with_deficient = 0;
    while kept < 500 {
        let Some(v) = class_instance(&mut r) else { continue };
        let (nx, ny) = (v.xs().len(), v.ys().len());
        if !v.degree_classes().x1.is_empty() {
            with_deficient += 1;
        }
        let paths = decompose_full(&v).map_err(|e| format!("instance {kept}: {e}"))?;
        let limit = nx.div_ceil(ny + 1);
        ensure!(paths.len() <= limit, "instance {kept}: {} paths > {limit}", paths.len());
        let mut on = HashSet::new();
        for p in &paths {
            ensure!(v.is_alternating_path(p), "instance {kept}: path not alternating");
            on.extend(p.vertices.iter().copied());
        }
        ensure!(v.xs().iter().chain(v.ys()).all(|u| on.contains(u)), "instance {kept}: not every vertex covered");
        kept += 1;
    }
    Ok(format!("500 instances ({with_deficient} with deficient vertices)"))
}

/// Longest alternating path, in edges, by exhaustive search.
fn longest_in(side: usize, edge: &dyn Fn(usize, usize) -> bool) -> usize {
    fn dfs(at: (bool, usize), used: &mut [Vec<bool>; 2], side: usize, edge: &dyn Fn(usize, usize) -> bool) -> usize {
        let mut best = 0;
        let (on_x, i) = at;
        let other = usize::from(on_x);
        for j in 0..side {
            let e = if on_x { edge(i, j) } else { edge(j, i) };
            if e && !used[other][j] {
                used[other][j] = true;
                best = best.max(1 + dfs((!on_x, j), used, side, edge));
                used[other][j] = false;
            }
        }
        best
    }
    let mut best = 0;
    for start in 0..side {
        for on_x in [true, false] {
            let mut used = [vec![false; side], vec![false; side]];
            used[usize::from(!on_x)][start] = true;
            best = best.max(dfs((on_x, start), &mut used, side, edge));
        }
    }
    best
}

fn ramsey_check(side: usize, k: usize, l: usize) -> Result<usize, String> {
    let xs: Vec<Vertex> = (1..=side).collect();
    let ys: Vec<Vertex> = (side + 1..=2 * side).collect();
    let mut red_wins = 0;
    for mask in 0u32..1 << (side * side) {
        let red = |i: usize, j: usize| mask >> (j * side + i) & 1 == 1;
        let lists: Vec<Vec<Vertex>> =
            (0..side).map(|j| (0..side).filter(|&i| red(i, j)).map(|i| xs[i]).collect()).collect();
        let v = BipartiteView::from_lists(xs.clone(), ys.clone(), &lists, Colour::Red, 0).unwrap();
        let longest_red = longest_in(side, &red);
        let longest_blue = longest_in(side, &|i, j| !red(i, j));
        ensure!(longest_red >= k || longest_blue >= l, "mask {mask:#x}: disjunction fails in the recount");
        let out = ramsey_path(&v, k, l).map_err(|e| format!("mask {mask:#x}: {e}"))?;
        let p = out.path();
        let (want, longest) = match out {
            RamseyOutcome::RedPath(_) => (k, longest_red),
            RamseyOutcome::BluePath(_) => (l, longest_blue),
        };
        let valid_edges = p.vertices.windows(2).all(|w| {
            let (x, y) = if w[0] <= side { (w[0], w[1]) } else { (w[1], w[0]) };
            x <= side && y > side && red(x - 1, y - side - 1) == (p.colour == Colour::Red)
        });
        ensure!(valid_edges, "mask {mask:#x}: returned path is not a {:?} alternating path", p.colour);
        ensure!(p.vertices.iter().collect::<HashSet<_>>().len() == p.len(), "mask {mask:#x}: repeated vertex");
        ensure!(p.edges() >= want, "mask {mask:#x}: {} edges < {want}", p.edges());
        ensure!(p.edges() <= longest, "mask {mask:#x}: path longer than the recount allows");
        if matches!(out, RamseyOutcome::RedPath(_)) {
            red_wins += 1;
        }
    }
    Ok(red_wins)
}

fn ramsey_suite() -> Outcome {
    let a = ramsey_check(3, 2, 3)?;
    let b = ramsey_check(4, 3, 4)?;
    Ok(format!("512 + 65536 colourings ({a} and {b} red outcomes)"))
}

fn two_paths_ok(g: &Colouring) -> Result<(), String> {
    let c = two_path_cover(g);
    ensure!(c.red.colour == Colour::Red && c.red.is_valid(g), "red path invalid");
    ensure!(c.blue.colour == Colour::Blue && c.blue.is_valid(g), "blue path invalid");
    let mut seen = vec![false; g.n() + 1];
    for &v in c.red.vertices.iter().chain(&c.blue.vertices) {
        ensure!(!seen[v], "vertex {v} on both paths");
        seen[v] = true;
    }
    ensure!(seen[1..].iter().all(|&s| s), "not every vertex covered");
    Ok(())
}

fn two_path_subroutine() -> Outcome {
    let mut count = 0;
    for n in 1usize..=5 {
        for idx in 0..1u64 << (n * (n - 1) / 2) {
            two_paths_ok(&enumerated(n, idx)).map_err(|e| format!("n={n} index {idx}: {e}"))?;
            count += 1;
        }
    }
    let mut r = rng(27);
    for t in 0..1000 {
        let n = r.gen_range(1..=200);
        let p = r.gen_range(0.0..=1.0);
        let g = random_colouring(n, p, r.gen());
        two_paths_ok(&g).map_err(|e| format!("random {t} (n={n}): {e}"))?;
    }
    Ok(format!("{count} exhaustive + 1000 random"))
}

fn rotation_certificates() -> Outcome {
    let mut r = rng(28);
    let (mut longer, mut cliques, mut small) = (0, 0, 0);
    for t in 0..500 {
        let n = r.gen_range(2..=60);
        let g = random_colouring(n, r.gen_range(0.2..0.8), r.gen());
        for gamma in Colour::BOTH {
            let p = maximal_path(&g, gamma, None);
            ensure!(p.colour == gamma && p.is_valid(&g), "instance {t}: maximal path invalid");
            let on: HashSet<_> = p.vertices.iter().copied().collect();
            for end in [p.first().unwrap(), p.last().unwrap()] {
                let stuck = (1..=n).filter(|u| !on.contains(u)).all(|u| g.colour(end, u) != gamma);
                ensure!(stuck, "instance {t}: endpoint {end} of a maximal {gamma} path can be extended");
            }
            // Random prefixes as well as the maximal path itself.
            let cut = r.gen_range(1..=p.len());
            for q in [p.clone(), Path::new(gamma, p.vertices[..cut].to_vec())] {
                let on: HashSet<_> = q.vertices.iter().copied().collect();
                let bound = r.gen_range(0.0..4.0);
                for y in (1..=n).filter(|u| !on.contains(u)) {
                    match rotate_or_extend(&g, &q, y, bound) {
                        RotationOutcome::LongerPath(np) => {
                            ensure!(np.len() == q.len() + 1, "instance {t}: rotation did not add one vertex");
                            ensure!(np.colour == gamma && np.is_valid(&g), "instance {t}: rotated path invalid");
                            let got: HashSet<_> = np.vertices.iter().copied().collect();
                            ensure!(got.contains(&y) && on.is_subset(&got), "instance {t}: wrong vertex set");
                            longer += 1;
                        }
                        RotationOutcome::CliqueCertificate { colour, vertices } => {
                            ensure!(colour == gamma.complement(), "instance {t}: certificate in path colour");
                            let above = vertices.len() as f64 > bound;
                            ensure!(above, "instance {t}: certificate below bound");
                            for (a, &u) in vertices.iter().enumerate() {
                                for &w in &vertices[a + 1..] {
                                    ensure!(g.colour(u, w) == colour, "instance {t}: certificate edge {u}-{w}");
                                }
                            }
                            cliques += 1;
                        }
                        RotationOutcome::SmallDegree => small += 1,
                    }
                }
            }
        }
    }
    Ok(format!("{longer} extensions, {cliques} certificates, {small} small-degree"))
}

fn sweep_regression() -> Outcome {
    let plan = SweepPlan {
        ns: vec![50, 100, 200, 500, 1000],
        generators: vec![
            GenKind::Extremal,
            GenKind::Random { p: 0.5 },
            GenKind::Adversarial { iters: 100, restarts: 2 },
        ],
        seeds: (0..10).collect(),
        workers: std::thread::available_parallelism().map_or(1, |w| w.get()),
        ..SweepPlan::default()
    };
    let rows = run_sweep(&plan);
    let mut worst = 0i64;
    for row in &rows {
        let tag = format!("n={} {} seed {}", row.n, row.generator, row.seed);
        ensure!(row.error.is_none(), "{tag}: {}", row.error.as_deref().unwrap_or(""));
        let size = row.solver_size.ok_or_else(|| format!("{tag}: no size"))?;
        let limit = isqrt(row.n) + 10;
        ensure!(size <= limit, "{tag}: size {size} > {limit}");
        worst = worst.max(size as i64 - isqrt(row.n) as i64);
    }
    Ok(format!("{} instances, max excess over floor(sqrt n) = {worst}", rows.len()))
}

fn ceiling_arithmetic() -> Outcome {
    for n in 1usize..=1_000_000 {
        let s = isqrt(n);
        let ceil_root = if s * s == n { s } else { s + 1 };
        let y = ceil_root - 1;
        let lhs = (n + 1).div_ceil(y + 1) - 1;
        ensure!(lhs <= s, "n={n}: {lhs} > {s}");
    }
    Ok("n = 1..=1000000".into())
}

fn strip_timing(csv: &str) -> String {
    csv.lines()
        .map(|l| {
            let mut f: Vec<&str> = l.split(',').collect();
            f.remove(8);
            f.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn round_trip_and_determinism() -> Outcome {
    let mut r = rng(31);
    for t in 0..1000 {
        let n = r.gen_range(1..=80);
        let g = random_colouring(n, r.gen_range(0.0..=1.0), r.gen());
        let back = decode(&encode(&g)).map_err(|e| format!("instance {t}: {e}"))?;
        ensure!(back == g, "instance {t}: round trip changed the colouring");
    }

    let plan = SweepPlan {
        ns: vec![6, 30, 120],
        generators: vec![
            GenKind::Extremal,
            GenKind::Random { p: 0.3 },
            GenKind::Adversarial { iters: 30, restarts: 2 },
        ],
        seeds: (0..4).collect(),
        oracle: true,
        ..SweepPlan::default()
    };
    let csv_of = |workers: usize| {
        let mut buf = Vec::new();
        write_csv(&run_sweep(&SweepPlan { workers, ..plan.clone() }), &mut buf).unwrap();
        strip_timing(&String::from_utf8(buf).unwrap())
    };
    let a = csv_of(1);
    ensure!(a == csv_of(1), "two library sweeps differ");
    ensure!(a == csv_of(4), "worker count changes the CSV");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("sweep{k}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_pathcover"))
            .args(["sweep", "-n", "6,30,120", "--gen", "extremal", "--gen", "random:0.3", "--gen", "adversarial:30:2"])
            .args(["--seeds", "0..4", "--oracle", "-o"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        ensure!(status.success(), "sweep command failed: {status}");
        outputs.push(strip_timing(&std::fs::read_to_string(&out).map_err(|e| e.to_string())?));
    }
    ensure!(outputs[0] == outputs[1], "two CLI sweeps differ");
    ensure!(outputs[0] == a, "CLI sweep differs from the library sweep");
    Ok(format!("1000 round trips, {} identical CSV rows", a.lines().count() - 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("extremal lower bound", extremal_lower_bound),
        ("exhaustive small-n soundness", exhaustive_small),
        ("long alternating path", long_path_suite),
        ("slack decomposition", decompose_suite),
        ("full decomposition", decompose_full_suite),
        ("bipartite path Ramsey", ramsey_suite),
        ("red/blue two-path cover", two_path_subroutine),
        ("rotation certificates", rotation_certificates),
        ("sweep regression threshold", sweep_regression),
        ("ceiling arithmetic", ceiling_arithmetic),
        ("format round trip and determinism", round_trip_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(info) => println!("criterion {:>2} PASS  {name}: {info} [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
