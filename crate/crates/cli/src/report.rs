//! JSON and text reports for the `vertices` and `blocks` commands.
//! Reports carry no timings, so equal inputs and seed give equal bytes.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use symvert::blocks::{BlockInfo, ThetaReport};
use symvert::vertex::{Case, VertexReport};
use symvert::{Field, GroupTable, Matrix, Subgroup};

use crate::checks::CheckOutcome;

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub degree: u32,
    /// modulus polynomial, coefficient bits as lowercase hex
    pub modulus: String,
}

impl FieldInfo {
    pub fn of(f: &Field) -> FieldInfo {
        FieldInfo { degree: f.degree(), modulus: format!("{:x}", f.modulus()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupInfo {
    pub order: usize,
    pub generator_ids: Vec<u32>,
    /// 1-based image lists, for permutation groups
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

impl SubgroupInfo {
    pub fn of(g: &GroupTable, h: &Subgroup) -> SubgroupInfo {
        let generators = g
            .permutations()
            .map(|(_, perms)| h.gens().iter().map(|&x| perms[x as usize].iter().map(|&p| p as usize + 1).collect()).collect());
        SubgroupInfo { order: h.order(), generator_ids: h.gens().to_vec(), generators }
    }
}

/// SHA-256 of the matrix shape and hex entries.
pub fn certificate_hash(m: &Matrix) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}x{}:", m.rows, m.cols));
    for &x in &m.data {
        h.update(m.field().to_hex(x));
        h.update(",");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SourceInfo {
    pub dim: usize,
    pub selfdual: bool,
    pub symmetric_type: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymVertexInfo {
    pub subgroup: SubgroupInfo,
    /// hash of the Gram twist theta certifying the projective form
    pub certificate: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseChecks {
    pub criteria_agree: bool,
    pub vertex_consistent: bool,
    pub index_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexJson {
    pub field: FieldInfo,
    pub seed: u64,
    pub group_order: usize,
    pub module_dim: usize,
    pub green_vertex: SubgroupInfo,
    /// hash of the Higman certificate alpha with tr(alpha) invertible
    pub green_certificate: String,
    pub sources: Vec<SourceInfo>,
    pub symmetric_type: bool,
    pub symmetric_vertices: Vec<SymVertexInfo>,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_checks: Option<CaseChecks>,
    pub principal_block: bool,
}

pub fn case_name(c: Option<Case>) -> &'static str {
    match c {
        Some(Case::I) => "I",
        Some(Case::II) => "II",
        Some(Case::III) => "III",
        None => "not-applicable",
    }
}

pub fn vertex_json(g: &GroupTable, f: &Field, seed: u64, dim: usize, r: &VertexReport) -> VertexJson {
    VertexJson {
        field: FieldInfo::of(f),
        seed,
        group_order: g.order(),
        module_dim: dim,
        green_vertex: SubgroupInfo::of(g, &r.green.vertex),
        green_certificate: certificate_hash(&r.green.cert.alpha),
        sources: r
            .green
            .sources
            .iter()
            .map(|s| SourceInfo { dim: s.module.dim(), selfdual: s.selfdual, symmetric_type: s.symmetric_type })
            .collect(),
        symmetric_type: r.symmetric_type,
        symmetric_vertices: r
            .symmetric_vertices
            .iter()
            .map(|s| SymVertexInfo { subgroup: SubgroupInfo::of(g, &s.subgroup), certificate: certificate_hash(&s.cert.theta) })
            .collect(),
        case: case_name(r.case.as_ref().map(|c| c.case)).to_string(),
        case_checks: r.case.as_ref().map(|c| CaseChecks {
            criteria_agree: c.criteria_agree,
            vertex_consistent: c.vertex_consistent,
            index_bound: c.index_bound,
            induced_witness: c.induced_witness.as_ref().map(certificate_hash),
        }),
        principal_block: r.principal_block,
    }
}

pub fn vertex_text(j: &VertexJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field GF(2^{}) modulus {} seed {}", j.field.degree, j.field.modulus, j.seed);
    let _ = writeln!(s, "group order {}, module dimension {}", j.group_order, j.module_dim);
    let _ = writeln!(s, "green vertex: order {} {}", j.green_vertex.order, gens_text(&j.green_vertex));
    for src in &j.sources {
        let _ = writeln!(s, "  source: dim {} self-dual {} symmetric type {}", src.dim, src.selfdual, src.symmetric_type);
    }
    let _ = writeln!(s, "symmetric type: {}", j.symmetric_type);
    for v in &j.symmetric_vertices {
        let _ = writeln!(s, "symmetric vertex: order {} {}", v.subgroup.order, gens_text(&v.subgroup));
    }
    let _ = writeln!(s, "case: {}", j.case);
    if let Some(c) = &j.case_checks {
        let _ = writeln!(s, "criteria agree {} vertex consistent {} index bound {}", c.criteria_agree, c.vertex_consistent, c.index_bound);
    }
    let _ = writeln!(s, "principal block: {}", j.principal_block);
    s
}

fn gens_text(h: &SubgroupInfo) -> String {
    if h.generator_ids.is_empty() {
        return "(trivial)".into();
    }
    match &h.generators {
        Some(gs) => gs.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(" "),
        None => format!("{:?}", h.generator_ids),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub representative: u32,
    pub size: usize,
    pub element_order: u32,
    pub real: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaInfo {
    pub theta_symmetric: bool,
    pub theta_invariant: bool,
    pub trace_is_block_idempotent: bool,
    pub block_nondegenerate: bool,
    pub explicit_projective: bool,
    pub generic_projective: bool,
    pub passed: bool,
}

impl ThetaInfo {
    pub fn of(t: &ThetaReport) -> ThetaInfo {
        ThetaInfo {
            theta_symmetric: t.theta_symmetric,
            theta_invariant: t.theta_invariant,
            trace_is_block_idempotent: t.trace_is_block_idempotent,
            block_nondegenerate: t.block_nondegenerate,
            explicit_projective: t.explicit_projective,
            generic_projective: t.generic_projective,
            passed: t.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockJson {
    pub index: usize,
    pub principal: bool,
    pub real: bool,
    /// coefficient of each class sum in e_B, hex
    pub coefficients: Vec<String>,
    pub central_character: Vec<String>,
    pub defect_classes: Vec<usize>,
    pub defect_group: SubgroupInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_defect_class: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended_defect_group: Option<SubgroupInfo>,
    /// the G x G form check, run for real blocks within the order bound
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_check: Option<ThetaInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksJson {
    pub field: FieldInfo,
    pub seed: u64,
    pub group_order: usize,
    pub classes: Vec<ClassInfo>,
    pub idempotents_verified: bool,
    pub blocks: Vec<BlockJson>,
}

pub fn block_json(g: &GroupTable, f: &Field, b: &BlockInfo, theta: Option<&ThetaReport>) -> BlockJson {
    BlockJson {
        index: b.index,
        principal: b.principal,
        real: b.real,
        coefficients: b.coeffs.iter().map(|&x| f.to_hex(x)).collect(),
        central_character: b.central_character.iter().map(|&x| f.to_hex(x)).collect(),
        defect_classes: b.defect_classes.clone(),
        defect_group: SubgroupInfo::of(g, &b.defect_group),
        real_defect_class: b.real_defect_class,
        extended_defect_group: b.extended_defect_group.as_ref().map(|e| SubgroupInfo::of(g, e)),
        theta_check: theta.map(ThetaInfo::of),
    }
}

pub fn class_infos(g: &GroupTable) -> Vec<ClassInfo> {
    g.conjugacy_classes()
        .iter()
        .map(|c| ClassInfo { representative: c.rep, size: c.size(), element_order: c.element_order, real: c.is_real })
        .collect()
}

pub fn blocks_text(j: &BlocksJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field GF(2^{}) modulus {} seed {}", j.field.degree, j.field.modulus, j.seed);
    let _ = writeln!(s, "group order {}, {} classes, {} blocks", j.group_order, j.classes.len(), j.blocks.len());
    for b in &j.blocks {
        let _ = writeln!(
            s,
            "block {}: principal {} real {} |D| = {} |E| = {}",
            b.index,
            b.principal,
            b.real,
            b.defect_group.order,
            b.extended_defect_group.as_ref().map_or("-".to_string(), |e| e.order.to_string())
        );
        let _ = writeln!(s, "  coefficients {}", b.coefficients.join(" "));
        if let Some(t) = &b.theta_check {
            let _ = writeln!(s, "  G x G form check: {}", if t.passed { "pass" } else { "FAIL" });
        }
    }
    s
}

pub fn outcome_line(o: &CheckOutcome) -> String {
    format!("criterion {:>2} {} {:>8} ms  {}: {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.millis, o.name, o.detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hashes_depend_on_entries_and_shape() {
        let f = Field::new(2).unwrap();
        let a = Matrix::identity(&f, 2);
        let b = Matrix::from_vec(&f, 1, 4, a.data.clone());
        assert_ne!(certificate_hash(&a), certificate_hash(&b));
        assert_eq!(certificate_hash(&a), certificate_hash(&a.clone()));
        assert_eq!(certificate_hash(&a).len(), 64);
    }
}
