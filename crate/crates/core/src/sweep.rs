//! Experiment sweeps: solve every instance of a plan and emit CSV rows.

use std::io::Write;
use std::time::Instant;

use crate::gen::GenKind;
use crate::model::{validate_cover, Colouring};
use crate::oracle::Oracle;
use crate::solver::{solve, SolverConfig};

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "generator",
    "seed",
    "solver_size",
    "solver_colour",
    "guarantee",
    "oracle_value",
    "branch_trace",
    "wall_time_ms",
    "error",
];

/// Environment variable holding the sweep worker count.
pub const WORKERS_ENV: &str = "PATHCOVER_WORKERS";

/// Worker count from [`WORKERS_ENV`], default 1.
pub fn workers_from_env() -> usize {
    std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&w| w >= 1).unwrap_or(1)
}

/// What to run. Extremal instances ignore `seeds` and run once (seed 0);
/// `enumerate` runs every colouring of `K_n`, with the index as the seed.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub ns: Vec<usize>,
    pub generators: Vec<GenKind>,
    pub seeds: Vec<u64>,
    pub oracle: bool,
    pub cfg: SolverConfig,
    pub workers: usize,
}

impl Default for SweepPlan {
    fn default() -> Self {
        SweepPlan {
            ns: Vec::new(),
            generators: Vec::new(),
            seeds: vec![0],
            oracle: false,
            cfg: SolverConfig::default(),
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub generator: String,
    pub seed: u64,
    pub solver_size: Option<usize>,
    pub solver_colour: Option<String>,
    pub guarantee: Option<String>,
    pub oracle_value: Option<usize>,
    pub branch_trace: String,
    pub wall_time_ms: u128,
    pub error: Option<String>,
}

impl SweepRecord {
    fn fields(&self) -> [String; 10] {
        let opt = |o: &Option<usize>| o.map(|v| v.to_string()).unwrap_or_default();
        [
            self.n.to_string(),
            self.generator.clone(),
            self.seed.to_string(),
            opt(&self.solver_size),
            self.solver_colour.clone().unwrap_or_default(),
            self.guarantee.clone().unwrap_or_default(),
            opt(&self.oracle_value),
            self.branch_trace.clone(),
            self.wall_time_ms.to_string(),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

/// Cover size used to score adversarial candidates.
pub fn solver_score(cfg: &SolverConfig) -> impl FnMut(&Colouring) -> usize + '_ {
    move |g| solve(g, cfg).size()
}

fn instances(plan: &SweepPlan) -> Vec<(usize, GenKind, u64)> {
    let mut out = Vec::new();
    for &n in &plan.ns {
        for &kind in &plan.generators {
            match kind {
                GenKind::Extremal => out.push((n, kind, 0)),
                GenKind::Enumerate => {
                    let edges = n * n.saturating_sub(1) / 2;
                    let count = if edges < 64 { 1u64 << edges } else { u64::MAX };
                    out.extend((0..count).map(|i| (n, kind, i)));
                }
                _ => out.extend(plan.seeds.iter().map(|&s| (n, kind, s))),
            }
        }
    }
    out
}

fn run_one(n: usize, kind: GenKind, seed: u64, plan: &SweepPlan) -> SweepRecord {
    let started = Instant::now();
    let mut rec = SweepRecord {
        n,
        generator: kind.to_string(),
        seed,
        solver_size: None,
        solver_colour: None,
        guarantee: None,
        oracle_value: None,
        branch_trace: String::new(),
        wall_time_ms: 0,
        error: None,
    };
    let outcome = std::panic::catch_unwind(|| {
        if n == 0 {
            return Err("n must be at least 1".to_string());
        }
        if matches!(kind, GenKind::Enumerate) && n * (n - 1) / 2 >= 64 {
            return Err("too many colourings to enumerate".to_string());
        }
        let g = crate::gen::GenSpec { kind, n }.build(seed, solver_score(&plan.cfg));
        let r = solve(&g, &plan.cfg);
        if !validate_cover(&g, &r.cover).valid {
            return Err("solver produced an invalid cover".to_string());
        }
        let oracle =
            if plan.oracle { Oracle::new(plan.cfg.oracle_threshold).exact_f(&g).ok().map(|o| o.value) } else { None };
        Ok((r, oracle))
    });
    match outcome {
        Ok(Ok((r, oracle))) => {
            rec.solver_size = Some(r.size());
            rec.solver_colour = Some(r.cover.colour.to_string());
            rec.guarantee = Some(r.guarantee.to_string());
            rec.oracle_value = oracle;
            rec.branch_trace = r.trace_string();
        }
        Ok(Err(e)) => rec.error = Some(e),
        Err(_) => rec.error = Some("panic during instance".to_string()),
    }
    rec.wall_time_ms = started.elapsed().as_millis();
    rec
}

/// Runs every instance, on `plan.workers` threads, and returns the rows
/// sorted by `(n, generator, seed)`.
pub fn run_sweep(plan: &SweepPlan) -> Vec<SweepRecord> {
    use rayon::prelude::*;
    let todo = instances(plan);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(plan.workers.max(1)).build().expect("thread pool");
    let mut rows: Vec<SweepRecord> =
        pool.install(|| todo.par_iter().map(|&(n, kind, seed)| run_one(n, kind, seed, plan)).collect());
    rows.sort_by(|a, b| (a.n, &a.generator, a.seed).cmp(&(b.n, &b.generator, b.seed)));
    rows
}

pub fn write_csv<W: Write>(rows: &[SweepRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csv_string(rows: &[SweepRecord]) -> String {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_plan_is_header_only() {
        let rows = run_sweep(&SweepPlan::default());
        assert!(rows.is_empty());
        assert_eq!(
            csv_string(&rows),
            "n,generator,seed,solver_size,solver_colour,guarantee,oracle_value,branch_trace,wall_time_ms,error\n"
        );
    }

    #[test]
    fn extremal_oracle_column() {
        let plan = SweepPlan {
            ns: vec![16, 4, 9],
            generators: vec![GenKind::Extremal],
            oracle: true,
            cfg: SolverConfig { oracle_threshold: 16, ..SolverConfig::default() },
            ..SweepPlan::default()
        };
        let rows = run_sweep(&plan);
        let vals: Vec<_> = rows.iter().map(|r| r.oracle_value).collect();
        assert_eq!(vals, vec![Some(2), Some(3), Some(4)]);
        for r in &rows {
            assert!(r.solver_size.unwrap() >= r.oracle_value.unwrap());
            assert!(r.error.is_none());
        }
    }

    #[test]
    fn bad_rows_carry_errors() {
        let plan = SweepPlan { ns: vec![0, 3], generators: vec![GenKind::Extremal], ..SweepPlan::default() };
        let rows = run_sweep(&plan);
        assert_eq!(rows.len(), 2);
        assert!(rows[0].error.is_some());
        assert!(rows[1].error.is_none());
    }

    #[test]
    fn workers_env_default() {
        // Not set in the test environment unless the caller exported it.
        if std::env::var(WORKERS_ENV).is_err() {
            assert_eq!(workers_from_env(), 1);
        }
    }
}
