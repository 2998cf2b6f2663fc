use serde::Serialize;

use super::{
    angular_resolution, check_general_position, check_mst_drawing, check_noncrossing, check_rng_drawing, float_str,
    fragile_margins, good_embedding_feasible_at, realized_embedding, GeneralPositionReport, MstReport,
    NoncrossingReport, RngReport,
};
use crate::construct::{names, Drawing};
use crate::tree::{good_embedding, DecompositionKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartReport {
    pub index: usize,
    pub rng: RngReport,
    pub mst: MstReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// Vertices whose drawn rotation differs from the good embedding.
    pub mismatches: Vec<String>,
    /// The subset of `mismatches` where no drawing could match.
    pub infeasible: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Everything the verifier knows about one drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub construction: String,
    pub parts: Vec<PartReport>,
    pub noncrossing_required: bool,
    pub noncrossing: NoncrossingReport,
    pub general_position: GeneralPositionReport,
    pub angular_resolution: Option<String>,
    pub angular_resolution_at: Option<String>,
    pub embedding: Option<EmbeddingReport>,
    pub warnings: Vec<String>,
}

impl Report {
    /// Proximity for every part, no coincident points, no crossings where
    /// the construction promises none, and the rotation kept wherever it
    /// can be.
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.rng.passed && p.mst.passed)
            && self.general_position.coincident.is_empty()
            && (!self.noncrossing_required || self.noncrossing.passed())
            && self.embedding.as_ref().map_or(true, |e| e.mismatches.len() == e.infeasible.len())
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        out.push_str(&format!("construction: {}\n", self.construction));
        for p in &self.parts {
            out.push_str(&format!(
                "part {}: rng {} ({} missing, {} extra), mst {}\n",
                p.index,
                mark(p.rng.passed),
                p.rng.missing.len(),
                p.rng.extra.len(),
                mark(p.mst.passed)
            ));
        }
        out.push_str(&format!(
            "crossings: {}{}\n",
            self.noncrossing.crossings.len(),
            if self.noncrossing_required { "" } else { " (permitted)" }
        ));
        out.push_str(&format!(
            "general position: {} coincident, {} collinear\n",
            self.general_position.coincident.len(),
            self.general_position.collinear_count
        ));
        if let (Some(a), Some(v)) = (&self.angular_resolution, &self.angular_resolution_at) {
            out.push_str(&format!("angular resolution: {a} at {v}\n"));
        }
        if let Some(e) = &self.embedding {
            out.push_str(&format!(
                "embedding: {} mismatches ({} infeasible)\n",
                e.mismatches.len(),
                e.infeasible.len()
            ));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

pub fn verify_drawing(d: &Drawing) -> Report {
    let tree = d.tree();
    let parts = d.parts();
    let part_reports: Vec<PartReport> = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .map(|(index, p)| PartReport { index, rng: check_rng_drawing(d, p), mst: check_mst_drawing(d, p) })
        .collect();
    let resolution = angular_resolution(d);
    let mut warnings = Vec::new();
    if part_reports.iter().all(|p| p.rng.passed) {
        if let Ok(fragile) = fragile_margins(d, &parts) {
            warnings.extend(fragile);
        }
    }

    let covering = d.instance().decomposition.as_ref().is_some_and(|dec| dec.kind == DecompositionKind::Covering);
    let embedding = (covering && parts.len() == 2)
        .then(|| good_embedding(tree, &parts[0], &parts[1]).ok())
        .flatten()
        .map(|target| {
            let realized = realized_embedding(d);
            let bad = realized.mismatches(&target);
            let infeasible = bad
                .iter()
                .filter(|&&v| !good_embedding_feasible_at(tree, &parts[0], &parts[1], v))
                .map(|&v| tree.name(v).to_string())
                .collect();
            EmbeddingReport { mismatches: bad.iter().map(|&v| tree.name(v).to_string()).collect(), infeasible }
        });
    if let Some(e) = &embedding {
        for v in &e.infeasible {
            warnings.push(format!("no drawing keeps the good rotation at {v}"));
        }
    }

    Report {
        construction: d.meta().construction.clone(),
        parts: part_reports,
        noncrossing_required: d.meta().construction != names::PART5,
        noncrossing: check_noncrossing(d),
        general_position: check_general_position(d),
        angular_resolution: resolution.as_ref().map(|(a, _)| float_str(a)),
        angular_resolution_at: resolution.map(|(_, v)| tree.name(v).to_string()),
        embedding,
        warnings,
    }
}
