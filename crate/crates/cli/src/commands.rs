//! The `vertices` and `blocks` commands as library calls.

use std::path::Path;
use std::sync::Arc;

use symvert::blocks::{block_decomposition, theta_check, verify_blocks};
use symvert::field::splitting_degree;
use symvert::vertex::{analyze, analyze_with_form};
use symvert::{Field, GroupTable};

use crate::report::{block_json, class_infos, vertex_json, BlocksJson, FieldInfo, VertexJson};
use crate::{io, suite, CliError, Result};

/// Largest group for which `blocks` runs the G x G form check.
pub const THETA_ORDER_BOUND: usize = 60;

#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub group_order: usize,
    pub dim: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { group_order: 512, dim: 64 }
    }
}

/// A group file path, or the name of a built-in group.
pub fn load_group(arg: &str, bounds: &Bounds) -> Result<Arc<GroupTable>> {
    let g = if Path::new(arg).is_file() {
        Arc::new(io::parse_group(&std::fs::read_to_string(arg)?)?)
    } else if suite::GROUPS.iter().any(|(n, _)| *n == arg) {
        suite::group(arg)?
    } else {
        return Err(CliError::Parse(format!("'{arg}' is neither a group file nor a built-in group")));
    };
    if g.order() > bounds.group_order {
        return Err(CliError::Bound(format!("group order {} exceeds {}", g.order(), bounds.group_order)));
    }
    Ok(g)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn vertices(
    group: &str,
    module: &str,
    form: Option<&str>,
    field_degree: Option<u32>,
    seed: u64,
    bounds: &Bounds,
) -> Result<VertexJson> {
    let g = load_group(group, bounds)?;
    let text = std::fs::read_to_string(module)?;
    let file: io::ModuleFile = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("module file: {e}")))?;
    if file.dim > bounds.dim {
        return Err(CliError::Bound(format!("module dimension {} exceeds {}", file.dim, bounds.dim)));
    }
    // without an override, the smallest field holding both the module and a splitting field
    let degree = field_degree.unwrap_or_else(|| {
        let s = splitting_degree(&g);
        file.field_degree / gcd(file.field_degree, s) * s
    });
    if degree % file.field_degree != 0 {
        return Err(CliError::Parse(format!("GF(2^{}) does not contain GF(2^{})", degree, file.field_degree)));
    }
    let m = io::module_from_file(g.clone(), &file, Some(degree))?;
    let r = match form {
        Some(path) => analyze_with_form(&io::parse_form(&m, &std::fs::read_to_string(path)?)?, seed)?,
        None => analyze(&m, seed)?,
    };
    Ok(vertex_json(&g, m.field(), seed, m.dim(), &r))
}

pub fn blocks(group: &str, field_degree: Option<u32>, seed: u64, bounds: &Bounds) -> Result<BlocksJson> {
    let g = load_group(group, bounds)?;
    let f = Field::new(field_degree.unwrap_or_else(|| splitting_degree(&g)))?;
    let bs = block_decomposition(&g, &f, seed)?;
    let verified = verify_blocks(&g, &f, &bs);
    let mut out = Vec::with_capacity(bs.len());
    for b in &bs {
        let theta = if b.real && g.order() <= THETA_ORDER_BOUND { Some(theta_check(&g, &f, b)?) } else { None };
        out.push(block_json(&g, &f, b, theta.as_ref()));
    }
    Ok(BlocksJson {
        field: FieldInfo::of(&f),
        seed,
        group_order: g.order(),
        classes: class_infos(&g),
        idempotents_verified: verified,
        blocks: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/modules/{name}.json", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn s3_has_two_blocks_and_the_principal_one_has_full_defect() {
        let j = blocks("s3", None, 1, &Bounds::default()).unwrap();
        assert_eq!(j.blocks.len(), 2);
        assert!(j.idempotents_verified);
        let p = j.blocks.iter().find(|b| b.principal).unwrap();
        assert_eq!(p.defect_group.order, 2);
        let other = j.blocks.iter().find(|b| !b.principal).unwrap();
        assert_eq!(other.defect_group.order, 1);
        assert!(j.blocks.iter().all(|b| b.theta_check.as_ref().map_or(true, |t| t.passed)));
    }

    #[test]
    fn two_groups_have_one_block() {
        for name in ["c2", "v4"] {
            assert_eq!(blocks(name, None, 1, &Bounds::default()).unwrap().blocks.len(), 1);
        }
    }

    #[test]
    fn d12_blocks_carry_extended_defect_groups() {
        let j = blocks("d12", None, 1, &Bounds::default()).unwrap();
        for b in j.blocks.iter().filter(|b| b.real) {
            let e = b.extended_defect_group.as_ref().unwrap();
            assert!(e.order == b.defect_group.order || e.order == 2 * b.defect_group.order);
        }
    }

    #[test]
    fn trivial_module_has_sylow_vertex() {
        let j = vertices("s3", &data("s3_trivial"), None, None, 1, &Bounds::default()).unwrap();
        assert_eq!(j.green_vertex.order, 2);
        assert!(j.principal_block);
    }

    #[test]
    fn d12_pim_has_two_symmetric_vertex_classes() {
        let j = vertices("d12", &data("d12_pim"), None, None, 1, &Bounds::default()).unwrap();
        assert_eq!(j.green_vertex.order, 1);
        assert_eq!(j.symmetric_vertices.len(), 2);
        assert!(j.symmetric_vertices.iter().all(|s| s.subgroup.order == 2));
    }

    #[test]
    fn s5_specht_simple_is_case_one() {
        let j = vertices("s5", &data("s5_d32"), None, None, 1, &Bounds::default()).unwrap();
        assert_eq!(j.case, "I");
    }

    #[test]
    fn non_selfdual_module_is_not_applicable() {
        let j = vertices("a4", &data("a4_nonselfdual"), None, None, 1, &Bounds::default()).unwrap();
        assert_eq!(j.case, "not-applicable");
        assert!(!j.symmetric_type);
    }

    #[test]
    fn bounds_are_enforced() {
        let small = Bounds { group_order: 4, dim: 64 };
        assert!(matches!(blocks("s3", None, 1, &small), Err(CliError::Bound(_))));
        let thin = Bounds { group_order: 512, dim: 2 };
        assert!(matches!(vertices("s4", &data("s4_natural"), None, None, 1, &thin), Err(CliError::Bound(_))));
    }
}
