//! Run reports and the convergence-trace CSV.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use tabutruss_core::design::DesignVector;
use tabutruss_core::engine::{SearchResult, TerminationReason, TraceRow};
use tabutruss_core::objectives::{EvalOutcome, ObjectiveKind};

use crate::config::RunConfig;

/// Everything a finished run reports. The pair (config hash, seed)
/// regenerates the run exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub objective_kind: ObjectiveKind,
    pub design: DesignVector,
    /// Value of the active objective (compound runs report the score).
    pub objective_value: f64,
    /// Raw objective triple (mass, -omega1, total displacement).
    pub raw_objectives: [f64; 3],
    pub mass: f64,
    pub frequency_hz: f64,
    pub omega1_rad_s: f64,
    pub total_displacement: f64,
    pub stresses: Vec<f64>,
    /// (node, dx, dy) over free nodes.
    pub displacements: Vec<(usize, f64, f64)>,
    pub feasible: bool,
    pub violations: Vec<String>,
    pub evaluations: u64,
    pub termination: Option<TerminationReason>,
    pub wall_seconds: f64,
    pub seed: u64,
    pub config_sha256: String,
    /// Search configuration after defaults were applied.
    pub resolved_search: tabutruss_core::engine::SearchConfig,
}

pub fn config_hash(path: &Path) -> std::io::Result<String> {
    let bytes = std::fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}

#[allow(clippy::too_many_arguments)]
pub fn build_report(
    config: &RunConfig,
    config_sha256: String,
    outcome: &EvalOutcome,
    design: DesignVector,
    search: Option<&SearchResult>,
    resolved_search: tabutruss_core::engine::SearchConfig,
    wall_seconds: f64,
) -> RunReport {
    RunReport {
        objective_kind: config.objective.kind,
        design,
        objective_value: outcome.value,
        raw_objectives: outcome.raw,
        mass: outcome.analysis.mass,
        frequency_hz: outcome.analysis.frequency_hz,
        omega1_rad_s: outcome.analysis.omega1,
        total_displacement: outcome.analysis.total_displacement,
        stresses: outcome.analysis.stresses.clone(),
        displacements: outcome.analysis.displacements.clone(),
        feasible: outcome.feasible,
        violations: outcome.violations.iter().map(|v| v.to_string()).collect(),
        evaluations: search.map_or(1, |s| s.evaluations),
        termination: search.map(|s| s.termination),
        wall_seconds,
        seed: resolved_search.rng_seed,
        config_sha256,
        resolved_search,
    }
}

impl RunReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write as _;
        let _ = writeln!(out, "objective: {}", self.objective_kind.label());
        let _ = writeln!(out, "value: {:.6}", self.objective_value);
        let _ = writeln!(out, "feasible: {}", self.feasible);
        for violation in &self.violations {
            let _ = writeln!(out, "  violated: {violation}");
        }
        let _ = writeln!(out, "mass: {:.4}", self.mass);
        let _ = writeln!(
            out,
            "fundamental frequency: {:.4} Hz ({:.4} rad/s)",
            self.frequency_hz, self.omega1_rad_s
        );
        let _ = writeln!(out, "total displacement: {:.6}", self.total_displacement);
        let _ = writeln!(out, "areas (display units):");
        for (i, a) in self.design.values().iter().enumerate() {
            let _ = writeln!(out, "  A{:<2} = {:.4}", i + 1, a);
        }
        let _ = writeln!(out, "member stresses:");
        for (i, s) in self.stresses.iter().enumerate() {
            let _ = writeln!(out, "  m{:<2} = {:+.6e}", i + 1, s);
        }
        let _ = writeln!(out, "free node displacements:");
        for (node, dx, dy) in &self.displacements {
            let _ = writeln!(out, "  n{} = ({:+.6e}, {:+.6e})", node + 1, dx, dy);
        }
        let _ = writeln!(out, "evaluations: {}", self.evaluations);
        if let Some(t) = self.termination {
            let _ = writeln!(out, "termination: {t:?}");
        }
        let _ = writeln!(out, "wall time: {:.3} s", self.wall_seconds);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "config sha256: {}", self.config_sha256);
        out
    }

    pub fn write(&self, directory: &Path, stem: &str) -> std::io::Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(directory)?;
        let text_path = directory.join(format!("{stem}.txt"));
        std::fs::write(&text_path, self.render_text())?;
        let json_path = directory.join(format!("{stem}.json"));
        let file = std::fs::File::create(&json_path)?;
        serde_json::to_writer_pretty(std::io::BufWriter::new(file), self)?;
        Ok((text_path, json_path))
    }
}

/// Write the convergence trace. The header is part of the interface:
/// `evaluations,best_objective,step_size,event`.
pub fn write_trace(path: &Path, trace: &[TraceRow]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(file, "evaluations,best_objective,step_size,event")?;
    for row in trace {
        writeln!(
            file,
            "{},{},{},{}",
            row.evaluations,
            row.best_objective,
            row.step_size,
            row.event.as_str()
        )?;
    }
    file.flush()
}
