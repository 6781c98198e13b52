//! Built-in groups and the example modules the verification suites use.

use std::sync::Arc;

use symvert::field::splitting_degree;
use symvert::rep::{decompose, is_indecomposable, module_iso};
use symvert::{Fe, Field, GroupTable, Matrix, ModuleRep, Subgroup, Subspace};

use crate::{io, specht, CliError, Result};

pub const GROUPS: &[(&str, &str)] = &[
    ("c2", include_str!("../data/groups/c2.json")),
    ("v4", include_str!("../data/groups/v4.json")),
    ("s3", include_str!("../data/groups/s3.json")),
    ("c3c4", include_str!("../data/groups/c3c4.json")),
    ("d12", include_str!("../data/groups/d12.json")),
    ("a4", include_str!("../data/groups/a4.json")),
    ("s4", include_str!("../data/groups/s4.json")),
    ("sl23", include_str!("../data/groups/sl23.json")),
    ("s5", include_str!("../data/groups/s5.json")),
    ("gl32tau", include_str!("../data/groups/gl32tau.json")),
];

pub fn group(name: &str) -> Result<Arc<GroupTable>> {
    let text = GROUPS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CliError::Parse(format!("no built-in group '{name}'")))?;
    Ok(Arc::new(io::parse_group(text)?))
}

/// GF(2^m) splitting the group algebra.
pub fn field_for(g: &GroupTable) -> Field {
    Field::new(splitting_degree(g)).expect("splitting degree is positive")
}

pub fn natural(g: &Arc<GroupTable>, f: &Field) -> ModuleRep {
    ModuleRep::natural_permutation(g.clone(), f).expect("built-in groups are permutation groups")
}

pub fn trivial(g: &Arc<GroupTable>, f: &Field) -> ModuleRep {
    ModuleRep::trivial(g.clone(), Arc::new(g.whole()), f)
}

/// The 2-dim irreducible of S3: sum-zero vectors in the natural module.
pub fn s3_two_dim(g: &Arc<GroupTable>, f: &Field) -> Result<ModuleRep> {
    let nat = natural(g, f);
    let w = Subspace::from_rows(f, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
    Ok(nat.submodule(&w)?)
}

/// Subgroups of D12 isomorphic to S3, in a fixed order.
pub fn s3_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let threes: Vec<u32> = (0..g.order() as u32).filter(|&x| g.elem_order(x) == 3).collect();
    let mut out: Vec<Subgroup> = Vec::new();
    for &r in &threes {
        for s in g.involutions() {
            if g.mul(r, s) == g.mul(s, r) {
                continue;
            }
            let h = g.closure(&[r, s]);
            if h.order() == 6 && !out.iter().any(|o| o.elements() == h.elements()) {
                out.push(h);
            }
        }
    }
    out.sort();
    out
}

/// The 2-dim irreducible of an S3 subgroup H, from the permutation module on H / <s>.
pub fn s3_sub_irreducible(g: &Arc<GroupTable>, h: &Subgroup, f: &Field, seed: u64) -> Result<ModuleRep> {
    let s = g.involutions().into_iter().find(|&x| h.contains(x)).expect("S3 has involutions");
    let cyc = g.closure(&[s]);
    let perm = ModuleRep::trivial(g.clone(), Arc::new(cyc), f).induce(h);
    decompose(&perm, seed)?
        .into_iter()
        .find(|c| c.module.dim() == 2)
        .map(|c| c.module)
        .ok_or_else(|| CliError::Core(symvert::Error::Internal("no 2-dim summand".into())))
}

/// The PIM of D12 induced from both S3 subgroups; checks both agree.
pub fn d12_pims(g: &Arc<GroupTable>, f: &Field, seed: u64) -> Result<Vec<ModuleRep>> {
    let subs = s3_subgroups(g);
    let mut out = Vec::new();
    for h in &subs {
        let z = s3_sub_irreducible(g, h, f, seed)?;
        out.push(z.induce(&g.whole()));
    }
    Ok(out)
}

pub fn d12_pim(g: &Arc<GroupTable>, f: &Field, seed: u64) -> Result<ModuleRep> {
    let ps = d12_pims(g, f, seed)?;
    let p = ps.into_iter().next().ok_or_else(|| CliError::Core(symvert::Error::Internal("D12 has no S3 subgroup".into())))?;
    if !is_indecomposable(&p)? {
        return Err(CliError::Core(symvert::Error::Internal("induced module decomposes".into())));
    }
    Ok(p)
}

/// Whether the two inductions are isomorphic.
pub fn d12_pims_agree(ps: &[ModuleRep], seed: u64) -> Result<bool> {
    Ok(ps.len() == 2 && module_iso(&ps[0], &ps[1], seed)?.is_some())
}

/// GL(3,2) on the points 0..7 as nonzero vectors of GF(2)^3: point i is i+1 in binary.
fn gl32_vector(point: u16) -> [Fe; 3] {
    let v = point + 1;
    [(v >> 2 & 1) as Fe, (v >> 1 & 1) as Fe, (v & 1) as Fe]
}

/// The natural 3-dim module of GL(3,2) = <gens[0], gens[1]>, induced to GL(3,2):<tau>.
pub fn gl32tau_induced(g: &Arc<GroupTable>, f: &Field) -> Result<(ModuleRep, ModuleRep)> {
    let (_, perms) = g.permutations().ok_or_else(|| CliError::Parse("GL(3,2):tau needs permutations".into()))?;
    let gens = g.gens();
    let h = g.closure(&[gens[0], gens[1]]);
    // e1, e2, e3 sit at points 3, 1, 0
    let basis = [3usize, 1, 0];
    let mats: Vec<Matrix> = h
        .gens()
        .iter()
        .map(|&x| {
            let cols: Vec<Vec<Fe>> = basis.iter().map(|&p| gl32_vector(perms[x as usize][p]).to_vec()).collect();
            Matrix::from_cols(f, 3, &cols)
        })
        .collect();
    let nat = ModuleRep::new(g.clone(), Arc::new(h), f.clone(), mats)?;
    let ind = nat.induce(&g.whole());
    Ok((nat, ind))
}

/// The normal Klein four subgroup of S4 and its 2-dim module with
/// generators [[1,1],[0,1]] and [[1,w],[0,1]], w a primitive cube root of 1.
pub fn v4_in_s4_module(g: &Arc<GroupTable>, f: &Field) -> Result<ModuleRep> {
    let (_, perms) = g.permutations().ok_or_else(|| CliError::Parse("S4 needs permutations".into()))?;
    let fpf: Vec<u32> = g
        .involutions()
        .into_iter()
        .filter(|&x| perms[x as usize].iter().enumerate().all(|(i, &y)| y as usize != i))
        .collect();
    if fpf.len() != 3 || f.degree() % 2 != 0 {
        return Err(CliError::Core(symvert::Error::Precondition("needs S4 over a field containing GF(4)".into())));
    }
    let v = g.closure(&fpf[..2]);
    let w: Fe = f.elements().find(|&x| x > 1 && f.pow(x, 3) == 1).unwrap_or(2);
    let a = Matrix::from_rows(f, 2, &[vec![1, 1], vec![0, 1]]);
    let b = Matrix::from_rows(f, 2, &[vec![1, w], vec![0, 1]]);
    Ok(ModuleRep::new(g.clone(), Arc::new(v), f.clone(), vec![a, b])?)
}

pub fn s5_d32(g: &Arc<GroupTable>, f: &Field) -> Result<specht::Specht> {
    specht::specht(g, f, &[3, 2])
}
