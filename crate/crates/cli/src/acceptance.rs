//! The benchmark acceptance suite: every criterion the artifact must
//! meet, with its tolerances pinned in code. `tabutruss verify` runs
//! this and prints one line per criterion; the `acceptance` integration
//! test drives the same functions.

use std::path::{Path, PathBuf};
use std::time::Instant;

use tabutruss_core::design::DesignVector;
use tabutruss_core::engine::{run_search, SearchConfig, SearchResult};
use tabutruss_core::fem::{analyze, assemble, Cholesky};
use tabutruss_core::objectives::{derive_normalization, TrussProblem};
use tabutruss_core::synthetic::standard_problems;

use crate::config::{load_config, RunConfig};

/// Published reference values the suite checks against.
mod reference {
    /// Metric case: best published mass and the earlier comparison
    /// result, kg.
    pub const METRIC_BEST_MASS: f64 = 1103.8;
    pub const METRIC_COMPARISON_MASS: f64 = 1112.1;
    /// Metric best-of-ten gate, kg.
    pub const METRIC_BEST_OF_TEN: f64 = 1110.0;
    /// Convergence anchor: best run value by 500 evaluations, kg.
    pub const METRIC_AT_500: f64 = 1150.0;
    /// Best published metric design, display units (1e-2 m²).
    pub const METRIC_BEST_AREAS: [f64; 10] = [
        1.022, 0.168, 0.601, 0.341, 0.168, 0.168, 0.361, 0.679, 0.361, 0.168,
    ];
    /// Imperial reference designs, in².
    pub const IMPERIAL_TS_AREAS: [f64; 10] = [
        33.5, 1.25, 33.5, 10.55, 1.8, 0.1, 32.3, 32.5, 14.0, 1.85,
    ];
    pub const IMPERIAL_BD_AREAS: [f64; 10] = [
        33.4896, 1.4392, 33.4996, 11.1137, 1.3353, 0.1002, 32.8076, 33.4843, 13.2201, 1.9814,
    ];
    /// Imperial reference objectives.
    pub const IMPERIAL_BD_MASS: f64 = 7064.16;
    pub const IMPERIAL_TS_MASS: f64 = 7062.14;
    pub const IMPERIAL_TS_HZ: f64 = 28.427;
    pub const IMPERIAL_TS_DISP: f64 = 4.38;
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.passed &= ok;
        self.details
            .push(format!("[{}] {detail}", if ok { "ok" } else { "FAIL" }));
    }

    fn fail(&mut self, detail: String) {
        self.check(false, detail);
    }
}

pub struct Suite {
    pub config_dir: PathBuf,
}

impl Suite {
    pub fn new(config_dir: &Path) -> Self {
        Self {
            config_dir: config_dir.to_path_buf(),
        }
    }

    fn load(&self, name: &str) -> Result<RunConfig, String> {
        load_config(&self.config_dir.join(name)).map_err(|e| e.to_string())
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        let (c1, c2) = self.criterion_1_and_2();
        vec![
            c1,
            c2,
            self.criterion_3(),
            self.criterion_4(),
            self.criterion_5(),
            self.criterion_6(),
            self.criterion_7(),
            self.criterion_8(),
        ]
    }

    /// Ten seeded mass-minimisation runs of the metric benchmark: at
    /// least eight must reach the published comparison mass, the best
    /// must beat the best-of-ten gate, and the winner must already be
    /// under the convergence anchor by 500 evaluations.
    pub fn criterion_1_and_2(&self) -> (CriterionResult, CriterionResult) {
        let mut c1 = CriterionResult::new(1, "metric mass optimization, 10 seeds");
        let mut c2 = CriterionResult::new(2, "convergence anchor at 500 evaluations");
        let config = match self.load("bland.json") {
            Ok(c) => c,
            Err(e) => {
                c1.fail(e.clone());
                c2.fail(e);
                return (c1, c2);
            }
        };
        let (built, problem) = match config.to_problem() {
            Ok(v) => v,
            Err(e) => {
                c1.fail(e.clone());
                c2.fail(e);
                return (c1, c2);
            }
        };
        let mut results: Vec<(u64, SearchResult, f64)> = Vec::new();
        for seed in 1..=10u64 {
            let search = SearchConfig {
                rng_seed: seed,
                ..built.search.clone()
            };
            let t0 = Instant::now();
            match run_search(&problem, &search, &built.start) {
                Ok(result) => {
                    let wall = t0.elapsed().as_secs_f64();
                    c1.check(
                        wall <= 60.0,
                        format!("seed {seed}: wall {wall:.2} s <= 60 s"),
                    );
                    c1.check(
                        result.evaluations <= 20_000,
                        format!(
                            "seed {seed}: {} evaluations <= 20000",
                            result.evaluations
                        ),
                    );
                    let feasible = problem
                        .outcome(&result.best)
                        .map(|o| o.feasible)
                        .unwrap_or(false);
                    c1.check(feasible, format!("seed {seed}: final design feasible"));
                    results.push((seed, result, wall));
                }
                Err(e) => c1.fail(format!("seed {seed}: {e}")),
            }
        }
        let reached = results
            .iter()
            .filter(|(_, r, _)| r.best_value <= reference::METRIC_COMPARISON_MASS)
            .count();
        c1.check(
            reached >= 8,
            format!(
                "{reached}/10 runs reached {} kg (need >= 8)",
                reference::METRIC_COMPARISON_MASS
            ),
        );
        let best = results
            .iter()
            .min_by(|a, b| a.1.best_value.partial_cmp(&b.1.best_value).unwrap());
        match best {
            Some((seed, result, _)) => {
                c1.check(
                    result.best_value <= reference::METRIC_BEST_OF_TEN,
                    format!(
                        "best of 10 (seed {seed}): {:.1} kg <= {} kg (published best {})",
                        result.best_value,
                        reference::METRIC_BEST_OF_TEN,
                        reference::METRIC_BEST_MASS
                    ),
                );
                let at_500 = result
                    .trace
                    .iter()
                    .filter(|row| row.evaluations <= 500)
                    .map(|row| row.best_objective)
                    .fold(f64::INFINITY, f64::min);
                c2.check(
                    at_500 <= reference::METRIC_AT_500,
                    format!(
                        "best run at 500 evaluations: {:.1} kg <= {} kg",
                        at_500,
                        reference::METRIC_AT_500
                    ),
                );
            }
            None => {
                c1.fail("no completed runs".to_string());
                c2.fail("no completed runs".to_string());
            }
        }
        (c1, c2)
    }

    /// Analyzing the published metric best design reproduces its mass.
    pub fn criterion_3(&self) -> CriterionResult {
        let mut c = CriterionResult::new(3, "metric analysis reproduces the published mass");
        let Ok(config) = self.load("bland.json").map_err(|e| c.fail(e)) else {
            return c;
        };
        let Ok((built, _)) = config.to_problem().map_err(|e| c.fail(e)) else {
            return c;
        };
        let areas = DesignVector::new(
            reference::METRIC_BEST_AREAS
                .iter()
                .map(|a| a * built.area_scale)
                .collect(),
        );
        match analyze(&built.model, &areas, built.spec.mass_matrix) {
            Ok(result) => c.check(
                (result.mass - reference::METRIC_BEST_MASS).abs() <= 0.5,
                format!(
                    "mass {:.2} kg within {} +/- 0.5",
                    result.mass,
                    reference::METRIC_BEST_MASS
                ),
            ),
            Err(e) => c.fail(e.to_string()),
        }
        c
    }

    /// Analyzing the published imperial designs reproduces their mass,
    /// frequency and displacement.
    pub fn criterion_4(&self) -> CriterionResult {
        let mut c = CriterionResult::new(4, "imperial analysis reproduces reference objectives");
        let Ok(config) = self.load("bd.json").map_err(|e| c.fail(e)) else {
            return c;
        };
        let Ok((built, _)) = config.to_problem().map_err(|e| c.fail(e)) else {
            return c;
        };
        let bd = DesignVector::new(
            reference::IMPERIAL_BD_AREAS
                .iter()
                .map(|a| a * built.area_scale)
                .collect(),
        );
        match analyze(&built.model, &bd, built.spec.mass_matrix) {
            Ok(result) => {
                let rel = (result.mass - reference::IMPERIAL_BD_MASS).abs()
                    / reference::IMPERIAL_BD_MASS;
                c.check(
                    rel <= 1e-3,
                    format!(
                        "comparison design mass {:.2} lb within 0.1% of {}",
                        result.mass,
                        reference::IMPERIAL_BD_MASS
                    ),
                );
            }
            Err(e) => c.fail(e.to_string()),
        }
        let ts = DesignVector::new(
            reference::IMPERIAL_TS_AREAS
                .iter()
                .map(|a| a * built.area_scale)
                .collect(),
        );
        match analyze(&built.model, &ts, built.spec.mass_matrix) {
            Ok(result) => {
                let hz_rel =
                    (result.frequency_hz - reference::IMPERIAL_TS_HZ).abs() / reference::IMPERIAL_TS_HZ;
                c.check(
                    hz_rel <= 0.02,
                    format!(
                        "frequency {:.3} Hz within 2% of {}",
                        result.frequency_hz,
                        reference::IMPERIAL_TS_HZ
                    ),
                );
                let disp_rel = (result.total_displacement - reference::IMPERIAL_TS_DISP).abs()
                    / reference::IMPERIAL_TS_DISP;
                c.check(
                    disp_rel <= 0.02,
                    format!(
                        "displacement {:.3} in within 2% of {}",
                        result.total_displacement,
                        reference::IMPERIAL_TS_DISP
                    ),
                );
            }
            Err(e) => c.fail(e.to_string()),
        }
        c
    }

    /// The compound run with derived normalization lands within 3% of
    /// each published raw objective, or finds a design that
    /// dominates-or-ties them.
    pub fn criterion_5(&self) -> CriterionResult {
        let mut c = CriterionResult::new(5, "compound objective run");
        let Ok(config) = self.load("bd_compound.json").map_err(|e| c.fail(e)) else {
            return c;
        };
        let Ok(built) = config.build().map_err(|e| c.fail(e)) else {
            return c;
        };
        let derivation = match derive_normalization(
            &built.model,
            &built.spec,
            built.area_scale,
            &SearchConfig {
                max_evaluations: 20_000,
                ..built.search.clone()
            },
        ) {
            Ok(d) => d,
            Err(e) => {
                c.fail(e.to_string());
                return c;
            }
        };
        let mass_best = derivation.constants.mass.best;
        c.check(
            mass_best <= reference::IMPERIAL_TS_MASS,
            format!(
                "single-objective mass optimum {:.1} lb <= compound reference {}",
                mass_best,
                reference::IMPERIAL_TS_MASS
            ),
        );
        let mut spec = built.spec.clone();
        spec.normalization = Some(derivation.constants);
        let start = match derivation.compound_start(
            &built.model,
            &spec,
            built.area_scale,
            built.search.min_step,
        ) {
            Ok(s) => s,
            Err(e) => {
                c.fail(e.to_string());
                return c;
            }
        };
        let problem =
            match TrussProblem::new(built.model.clone(), spec.clone(), built.area_scale) {
                Ok(p) => p,
                Err(e) => {
                    c.fail(e.to_string());
                    return c;
                }
            };
        let search = SearchConfig {
            max_evaluations: 50_000,
            ..built.search.clone()
        };
        let result = match run_search(&problem, &search, &start) {
            Ok(r) => r,
            Err(e) => {
                c.fail(e.to_string());
                return c;
            }
        };
        c.check(
            result.evaluations <= 50_000,
            format!("{} evaluations <= 50000", result.evaluations),
        );
        let outcome = match problem.outcome(&result.best) {
            Ok(o) => o,
            Err(e) => {
                c.fail(e.to_string());
                return c;
            }
        };
        c.check(outcome.feasible, "final design feasible".to_string());
        let mass = outcome.raw[0];
        let hz = outcome.analysis.frequency_hz;
        let disp = outcome.raw[2];
        let within = |value: f64, target: f64| (value - target).abs() / target <= 0.03;
        let in_bands = within(mass, reference::IMPERIAL_TS_MASS)
            && within(hz, reference::IMPERIAL_TS_HZ)
            && within(disp, reference::IMPERIAL_TS_DISP);
        let dominates = mass <= reference::IMPERIAL_TS_MASS
            && hz >= reference::IMPERIAL_TS_HZ
            && disp <= reference::IMPERIAL_TS_DISP;
        c.check(
            in_bands || dominates,
            format!(
                "({mass:.1} lb, {hz:.3} Hz, {disp:.3} in) vs ({}, {}, {}): within 3% {} / dominates {}",
                reference::IMPERIAL_TS_MASS,
                reference::IMPERIAL_TS_HZ,
                reference::IMPERIAL_TS_DISP,
                in_bands,
                dominates
            ),
        );
        c.details.push(format!(
            "    compound score {:.4} (not comparable to published scores: normalization constants are derived, see README)",
            outcome.value
        ));
        c
    }

    /// On three exhaustively enumerable lattices the search matches the
    /// enumeration optimum on at least 95 of 100 seeds per problem.
    pub fn criterion_6(&self) -> CriterionResult {
        let mut c = CriterionResult::new(6, "enumeration-oracle equivalence on synthetic lattices");
        let t0 = Instant::now();
        for index in 0..standard_problems(0).len() {
            let (truth, points) = standard_problems(0)[index].enumerate_optimum();
            let mut matches = 0;
            for seed in 0..100 {
                let problems = standard_problems(seed);
                let problem = &problems[index];
                match run_search(problem, &problem.config, &problem.start) {
                    Ok(result) => {
                        if (result.best_value - truth).abs()
                            <= 1e-9 * truth.abs().max(1.0)
                        {
                            matches += 1;
                        }
                    }
                    Err(e) => {
                        c.fail(format!("{}: {e}", problem.name));
                        return c;
                    }
                }
            }
            let name = standard_problems(0)[index].name;
            c.check(
                matches >= 95,
                format!("{name}: {matches}/100 matched the {points}-point enumeration optimum {truth:.4}"),
            );
        }
        let elapsed = t0.elapsed().as_secs_f64();
        c.check(elapsed <= 300.0, format!("runtime {elapsed:.1} s <= 300 s"));
        c
    }

    /// Structural property spot-checks mirroring the crate's test
    /// suites: memory bounds, monotone incumbent, step lattice,
    /// determinism, matrix symmetry/definiteness, equilibrium,
    /// frequency scale invariance and displacement linearity.
    pub fn criterion_7(&self) -> CriterionResult {
        let mut c = CriterionResult::new(7, "property spot-checks");
        let Ok(config) = self.load("bland.json").map_err(|e| c.fail(e)) else {
            return c;
        };
        let Ok((built, problem)) = config.to_problem().map_err(|e| c.fail(e)) else {
            return c;
        };
        let short = SearchConfig {
            max_evaluations: 3_000,
            ..built.search.clone()
        };
        match (
            run_search(&problem, &short, &built.start),
            run_search(&problem, &short, &built.start),
        ) {
            (Ok(a), Ok(b)) => {
                let bytes_a = serde_json::to_vec(&a.trace).unwrap_or_default();
                let bytes_b = serde_json::to_vec(&b.trace).unwrap_or_default();
                c.check(
                    !bytes_a.is_empty() && bytes_a == bytes_b,
                    "same seed twice: byte-identical traces".to_string(),
                );
                let mut monotone = true;
                let mut increasing = true;
                let mut on_lattice = true;
                let mut prev_best = f64::INFINITY;
                let mut prev_evals = 0;
                for row in &a.trace {
                    monotone &= row.best_objective <= prev_best + 1e-12;
                    increasing &= row.evaluations > prev_evals;
                    let ratio = row.step_size / short.min_step;
                    on_lattice &= (ratio - ratio.round()).abs() < 1e-6;
                    prev_best = row.best_objective;
                    prev_evals = row.evaluations;
                }
                c.check(monotone, "incumbent trace is non-increasing".to_string());
                c.check(increasing, "evaluation counts strictly increase".to_string());
                c.check(on_lattice, "all steps are multiples of min_step".to_string());
            }
            _ => c.fail("short verification runs failed".to_string()),
        }

        // matrix properties across randomized positive areas
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
        let mut symmetric = true;
        let mut positive_definite = true;
        let mut equilibrium = true;
        for _ in 0..25 {
            let areas = DesignVector::new(
                (0..10)
                    .map(|_| rng.gen_range(built.spec.constraints.a_min..built.spec.constraints.a_max) * built.area_scale)
                    .collect(),
            );
            match assemble(&built.model, &areas, built.spec.mass_matrix) {
                Ok((k, m)) => {
                    symmetric &= k.max_asymmetry() == 0.0 && m.max_asymmetry() == 0.0;
                    positive_definite &=
                        Cholesky::factor(&k).is_ok() && Cholesky::factor(&m).is_ok();
                }
                Err(_) => positive_definite = false,
            }
            if let Ok(result) = analyze(&built.model, &areas, built.spec.mass_matrix) {
                equilibrium &= result.residual <= 1e-8;
            } else {
                equilibrium = false;
            }
        }
        c.check(symmetric, "K and M symmetric on 25 random designs".to_string());
        c.check(
            positive_definite,
            "K and M positive definite on 25 random designs".to_string(),
        );
        c.check(
            equilibrium,
            "equilibrium residual <= 1e-8 on 25 random designs".to_string(),
        );

        // frequency invariance under uniform scaling
        let areas = DesignVector::new((1..=10).map(|i| 0.002 + 0.001 * i as f64).collect());
        let scaled = DesignVector::new(areas.values().iter().map(|a| 3.0 * a).collect());
        match (
            analyze(&built.model, &areas, built.spec.mass_matrix),
            analyze(&built.model, &scaled, built.spec.mass_matrix),
        ) {
            (Ok(a), Ok(b)) => {
                let rel = (a.omega1 - b.omega1).abs() / a.omega1;
                c.check(
                    rel <= 1e-8,
                    format!("frequency invariant under uniform area scaling (rel {rel:.1e})"),
                );
            }
            _ => c.fail("frequency scaling analysis failed".to_string()),
        }

        // displacement linearity in the load
        let mut doubled = built.model.clone();
        for load in doubled.loads.values_mut() {
            load.0 *= 2.0;
            load.1 *= 2.0;
        }
        let areas = DesignVector::uniform(0.00761, 10);
        match (
            analyze(&built.model, &areas, built.spec.mass_matrix),
            analyze(&doubled, &areas, built.spec.mass_matrix),
        ) {
            (Ok(a), Ok(b)) => {
                let ok = a
                    .displacements
                    .iter()
                    .zip(&b.displacements)
                    .all(|((_, ax, ay), (_, bx, by))| {
                        (2.0 * ax - bx).abs() <= 1e-8 * bx.abs().max(1e-12)
                            && (2.0 * ay - by).abs() <= 1e-8 * by.abs().max(1e-12)
                    });
                c.check(ok, "displacements scale linearly with the load".to_string());
            }
            _ => c.fail("load scaling analysis failed".to_string()),
        }
        c
    }

    /// Production ω₁ against the inertia-bisection reference on 100
    /// randomized positive-area instances.
    pub fn criterion_8(&self) -> CriterionResult {
        let mut c = CriterionResult::new(8, "eigenvalue oracle on randomized instances");
        let Ok(config) = self.load("bd.json").map_err(|e| c.fail(e)) else {
            return c;
        };
        let Ok((built, _)) = config.to_problem().map_err(|e| c.fail(e)) else {
            return c;
        };
        use rand::{Rng, SeedableRng};
        use tabutruss_core::fem::{fundamental_frequency, smallest_eigenvalue_by_inertia};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut worst_rel = 0.0_f64;
        for case in 0..100 {
            let areas = DesignVector::new(
                (0..10)
                    .map(|_| {
                        let t: f64 = rng.gen_range(0.0..1.0);
                        0.1 * (33.5_f64 / 0.1).powf(t)
                    })
                    .collect(),
            );
            let Ok((k, m)) = assemble(&built.model, &areas, built.spec.mass_matrix) else {
                c.fail(format!("assembly failed on case {case}"));
                return c;
            };
            let (Ok(omega), Ok(lambda)) = (
                fundamental_frequency(&k, &m),
                smallest_eigenvalue_by_inertia(&k, &m, 1e-12),
            ) else {
                c.fail(format!("eigen solve failed on case {case}"));
                return c;
            };
            let reference = lambda.max(0.0).sqrt();
            worst_rel = worst_rel.max((omega - reference).abs() / reference);
        }
        c.check(
            worst_rel <= 1e-6,
            format!("worst relative deviation {worst_rel:.2e} <= 1e-6 over 100 instances"),
        );
        c
    }
}

/// Render results as the verify table; returns overall success.
pub fn render(results: &[CriterionResult]) -> (String, bool) {
    let mut out = String::new();
    let mut all = true;
    use std::fmt::Write as _;
    for r in results {
        let _ = writeln!(
            out,
            "criterion {}: {} — {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name
        );
        for d in &r.details {
            let _ = writeln!(out, "    {d}");
        }
        all &= r.passed;
    }
    (out, all)
}
