//! The acceptance checks behind `symvert verify`. Each check returns one
//! pass/fail outcome with a short detail line and its running time.

use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use symvert::algebra::{self, FdAlgebra, GroupAlgebra};
use symvert::blocks::{self, BlockInfo};
use symvert::forms::{
    self, element_form, invariant_forms, is_isometry, orth_complement, orth_decompose, paired_module, regular_form,
    restricted_gram, scalar_isometry, verify_orth_decomposition, ComponentKind, GForm,
};
use symvert::rep::{decompose, hom_space, is_indecomposable, is_selfdual, module_iso, pims, simple_modules};
use symvert::vertex::{self, Case};
use symvert::{Fe, Field, GroupTable, Matrix, ModuleRep, Subgroup, Subspace};

use crate::{specht, suite, CliError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u64,
}

pub const CHECKS: &[(usize, &str)] = &[
    (1, "d12 pim has two symmetric vertex classes"),
    (2, "orthogonal decompositions of (M,B)^3 differ in length"),
    (3, "v4 regular module has infinitely many decompositions"),
    (4, "self-dual irreducibles carry one symplectic form"),
    (5, "projective cover of the trivial module"),
    (6, "symmetric vertices over permutation summands"),
    (7, "case exemplars"),
    (8, "quadratic type of projective covers"),
    (9, "real blocks and extended defect groups"),
    (10, "distinguished components of induced modules"),
    (11, "oracle comparisons on small groups"),
];

pub const SUITES: &[&str] = &["paper-examples", "oracle-small", "all"];

pub fn suite_checks(name: &str) -> Result<Vec<usize>> {
    match name {
        "paper-examples" => Ok((1..=10).collect()),
        "oracle-small" => Ok(vec![11]),
        "all" => Ok((1..=11).collect()),
        _ => Err(CliError::UnknownSuite(name.to_string())),
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<Vec<CheckOutcome>> {
    Ok(suite_checks(name)?.into_iter().map(|id| run(id, seed)).collect())
}

#[derive(Default)]
struct Log {
    notes: Vec<String>,
    fails: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.fails.push(what.into());
        }
    }
    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

pub fn run(id: usize, seed: u64) -> CheckOutcome {
    let name = CHECKS.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1).to_string();
    let start = Instant::now();
    let mut log = Log::default();
    let res = match id {
        1 => d12_two_vertices(seed, &mut log),
        2 => krull_schmidt(seed, &mut log),
        3 => v4_family(seed, &mut log),
        4 => fong(seed, &mut log),
        5 => trivial_cover(seed, &mut log),
        6 => index_bound(seed, &mut log),
        7 => case_exemplars(seed, &mut log),
        8 => quadratic_pims(seed, &mut log),
        9 => real_blocks(seed, &mut log),
        10 => scott(seed, &mut log),
        11 => oracles(seed, &mut log),
        _ => Err(CliError::UnknownSuite(format!("check {id}"))),
    };
    if let Err(e) = res {
        log.fails.push(format!("error: {e}"));
    }
    let passed = log.fails.is_empty();
    let mut parts = log.fails.clone();
    parts.extend(log.notes);
    CheckOutcome { id, name, passed, detail: parts.join("; "), millis: start.elapsed().as_millis() as u64 }
}

fn internal(s: &str) -> CliError {
    CliError::Core(symvert::Error::Internal(s.to_string()))
}

fn one(g: &GroupTable) -> Vec<Fe> {
    let mut a = vec![0; g.order()];
    a[0] = 1;
    a
}

fn d12_two_vertices(seed: u64, log: &mut Log) -> Result<()> {
    let g = suite::group("d12")?;
    let f = suite::field_for(&g);
    let ps = suite::d12_pims(&g, &f, seed)?;
    log.check(ps.len() == 2, "D12 should have two S3 subgroups");
    log.check(suite::d12_pims_agree(&ps, seed)?, "inductions from the two S3 subgroups differ");
    for p in &ps {
        log.check(is_indecomposable(p)?, "induced module decomposes");
        log.check(vertex::is_projective(p, &g.trivial())?.is_some(), "induced module is not projective");
    }
    let p = &ps[0];
    let green = vertex::green_vertex(p, seed)?;
    let base = vertex::base_form(p)?;
    let sym = vertex::symmetric_vertices(p, &base, &green)?;
    log.check(sym.len() == 2 && sym.iter().all(|s| s.subgroup.order() == 2), "expected two order-2 symmetric vertex classes");
    if sym.len() == 2 {
        log.check(g.subgroup_conjugate(&sym[0].subgroup, &sym[1].subgroup).is_none(), "symmetric vertices are conjugate");
        for (a, b) in [(0, 1), (1, 0)] {
            let theta = &sym[a].cert.theta;
            log.check(vertex::form_is_h_projective(&base, theta, &sym[a].subgroup)?.is_some(), "form not projective at its own vertex");
            log.check(vertex::form_is_h_projective(&base, theta, &sym[b].subgroup)?.is_none(), "form projective at the other vertex");
        }
    }
    log.note(format!("dim {}, green vertex order {}, {} symmetric classes", p.dim(), green.vertex.order(), sym.len()));
    Ok(())
}

/// (M, B) -> (M, B') when End(M) = k: a module isomorphism rescaled by a square root.
fn scaled_isometry(b: &GForm, c: &GForm, seed: u64) -> Result<Option<Matrix>> {
    let f = b.field().clone();
    let Some(phi) = module_iso(b.module(), c.module(), seed)? else { return Ok(None) };
    let pulled = phi.transpose().mul(c.gram()).mul(&phi);
    let d = b.dim();
    let Some((i, j)) = (0..d * d).map(|k| (k / d, k % d)).find(|&(i, j)| b.gram().get(i, j) != 0) else { return Ok(None) };
    let mu = f.div(pulled.get(i, j), b.gram().get(i, j));
    if mu == 0 || pulled != b.gram().scaled(mu) {
        return Ok(None);
    }
    let psi = phi.scaled(f.inv(f.sqrt(mu)));
    Ok(is_isometry(b, c, &psi).then_some(psi))
}

/// Every vector of span(basis) over the field, when there are few enough.
fn all_combinations(f: &Field, basis: &[Matrix], limit: usize) -> Option<Vec<Matrix>> {
    let q = f.order();
    let total = q.checked_pow(basis.len() as u32)?;
    if total > limit {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    for mut k in 1..total {
        let mut m = Matrix::zeros(f, basis[0].rows, basis[0].cols);
        for b in basis {
            m.axpy((k % q) as Fe, b);
            k /= q;
        }
        out.push(m);
    }
    Some(out)
}

/// An isometry from the paired module of M onto (X, B), found from two
/// complementary totally isotropic submodules isomorphic to M.
fn paired_isometry(m: &ModuleRep, x: &GForm) -> Option<Matrix> {
    let f = m.field().clone();
    let d = m.dim();
    if x.dim() != 2 * d {
        return None;
    }
    let homs = hom_space(m, x.module());
    if homs.is_empty() {
        return None;
    }
    let maps = all_combinations(&f, &homs, 1 << 16)?;
    let isotropic: Vec<&Matrix> = maps
        .iter()
        .filter(|p| p.rank() == d && p.transpose().mul(x.gram()).mul(p).is_zero())
        .collect();
    let p1 = isotropic.first()?;
    let p2 = isotropic.iter().find(|p| p1.hstack(p).rank() == 2 * d)?;
    let k = p1.transpose().mul(x.gram()).mul(p2).inverse()?;
    let psi = p1.hstack(&p2.mul(&k));
    let (pm, pg) = paired_module(m);
    let paired = GForm::nondegenerate(pm, pg).ok()?;
    is_isometry(&paired, x, &psi).then_some(psi)
}

fn krull_schmidt(seed: u64, log: &mut Log) -> Result<()> {
    let g = suite::group("s3")?;
    let f = suite::field_for(&g);
    let m = suite::s3_two_dim(&g, &f)?;
    let gram = forms::symmetric_form(&m).ok_or_else(|| internal("no symmetric form on the 2-dim irreducible"))?;
    let b = GForm::nondegenerate(m.clone(), gram)?;
    log.check(b.is_symplectic(), "form on M is not symplectic");
    let triple = GForm::orthogonal_sum(&[&b, &b, &b]);
    let mut three = None;
    let mut two = None;
    for s in seed..seed + 256 {
        let comps = orth_decompose(&triple, s)?;
        if comps.len() == 3 && three.is_none() {
            let mut ok = verify_orth_decomposition(&triple, &comps, s)?;
            for c in &comps {
                ok &= c.kind == ComponentKind::Indecomposable && scaled_isometry(&b, &c.form, s)?.is_some();
            }
            if ok {
                three = Some(s);
            }
        }
        if comps.len() == 2 && two.is_none() {
            let mut ok = verify_orth_decomposition(&triple, &comps, s)?;
            let single = comps.iter().filter(|c| c.kind == ComponentKind::Indecomposable).count() == 1;
            for c in &comps {
                ok &= match c.kind {
                    ComponentKind::Indecomposable => scaled_isometry(&b, &c.form, s)?.is_some(),
                    ComponentKind::DualPair => paired_isometry(&m, &c.form).is_some(),
                };
            }
            if ok && single {
                two = Some(s);
            }
        }
        if three.is_some() && two.is_some() {
            break;
        }
    }
    log.check(three.is_some(), "no seed gave three components isometric to (M,B)");
    log.check(two.is_some(), "no seed gave (M,B) plus a paired module");
    if let (Some(a), Some(c)) = (three, two) {
        log.check(a != c, "the two shapes came from the same seed");
        log.note(format!("3 components at seed {a}, 2 components at seed {c}"));
    }
    // the diagonal and its complement
    let d = m.dim();
    let diag_rows: Vec<Vec<Fe>> = (0..d)
        .map(|i| (0..3 * d).map(|j| (j % d == i) as Fe).collect())
        .collect();
    let diag = Subspace::from_rows(&f, 3 * d, &diag_rows);
    let dform = triple.restrict_to(&diag)?;
    log.check(dform.is_nondegenerate() && scaled_isometry(&b, &dform, seed)?.is_some(), "diagonal is not isometric to (M,B)");
    let rest = orth_complement(&triple, &diag);
    let rform = triple.restrict_to(&rest)?;
    log.check(paired_isometry(&m, &rform).is_some(), "complement of the diagonal is not the paired module");
    Ok(())
}

/// Right multiplication by u on kG in the group-element basis.
fn right_mult(g: &GroupTable, f: &Field, u: &[Fe]) -> Matrix {
    let n = g.order();
    let mut r = Matrix::zeros(f, n, n);
    for x in 0..n as u32 {
        for (h, &c) in u.iter().enumerate() {
            if c != 0 {
                let y = g.mul(x, h as u32) as usize;
                r.set(y, x as usize, r.get(y, x as usize) ^ c);
            }
        }
    }
    r
}

fn v4_family(seed: u64, log: &mut Log) -> Result<()> {
    let g = suite::group("v4")?;
    let f = Field::new(2)?;
    let n = g.order();
    let (r, s) = (g.gens()[0], g.gens()[1]);
    let t = g.mul(r, s);
    let elt = |terms: &[(u32, Fe)]| {
        let mut v = vec![0; n];
        for &(x, c) in terms {
            v[x as usize] ^= c;
        }
        v
    };
    let br = element_form(&g, &f, r);
    let bs = element_form(&g, &f, s);
    let big = GForm::orthogonal_sum(&[&br, &bs]);
    let units: Vec<Fe> = (1..f.order() as Fe).collect();
    let mut pairs = 0;
    for &al in &units {
        for &be in &units {
            if al == be {
                continue;
            }
            pairs += 1;
            let x1 = elt(&[(r, al), (s, be)]);
            let x2 = elt(&[(r, be), (s, al)]);
            let b1 = regular_form(&g, &f, &x1);
            let b2 = regular_form(&g, &f, &x2);
            for (x, b) in [(&x1, &b1), (&x2, &b2)] {
                log.check(b.is_nondegenerate() && b.is_symplectic(), format!("B_x not nondegenerate symplectic for ({al},{be})"));
                // B_x symplectic iff B_1(x, 1) = 0, nondegenerate iff B_1(x, x) != 0
                log.check(x[0] == 0 && f.dot(x, x) != 0, "B_1 criteria disagree");
                let _ = b;
            }
            let (ra, rb) = (f.sqrt(al), f.sqrt(be));
            let phi1 = right_mult(&g, &f, &elt(&[(0, ra)])).vstack(&right_mult(&g, &f, &elt(&[(0, rb)])));
            let phi2 = right_mult(&g, &f, &elt(&[(t, rb)])).vstack(&right_mult(&g, &f, &elt(&[(0, ra)])));
            log.check(is_isometry(&b1, &big, &phi1), format!("first piece is not (M, B_x) for ({al},{be})"));
            log.check(is_isometry(&b2, &big, &phi2), format!("second piece is not (M, B_y) for ({al},{be})"));
            log.check(phi1.transpose().mul(big.gram()).mul(&phi2).is_zero(), "pieces are not orthogonal");
            log.check(phi1.hstack(&phi2).is_invertible(), "pieces do not span");
        }
    }
    log.check(pairs == 6, "expected six ordered pairs");
    // isometry classes of (kV4, B_x) for units x, by search over all right multiplications
    let w = units[1];
    let bases = [elt(&[(r, 1)]), elt(&[(r, w), (s, 1)])];
    let mut targets: Vec<Vec<Fe>> = Vec::new();
    for x in &bases {
        for &l in &units {
            targets.push(x.iter().map(|&c| f.mul(c, l)).collect());
        }
    }
    targets.extend([elt(&[(s, 1)]), elt(&[(t, 1)]), elt(&[(0, 1)]), elt(&[(r, 1), (s, w)]), elt(&[(r, w), (s, f.mul(w, w))])]);
    let all_u: Vec<Vec<Fe>> = (0..f.order().pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = (k % f.order()) as Fe;
                    k /= f.order();
                    c
                })
                .collect()
        })
        .collect();
    let rus: Vec<Matrix> = all_u.iter().map(|u| right_mult(&g, &f, u)).filter(|m| m.is_invertible()).collect();
    let mut tested = 0;
    for x in &bases {
        let bx = regular_form(&g, &f, x);
        for y in &targets {
            if f.dot(y, y) == 0 {
                continue;
            }
            let by = regular_form(&g, &f, y);
            let found = rus.iter().any(|ru| ru.transpose().mul(by.gram()).mul(ru) == *bx.gram());
            let scalar = units.iter().find(|&&l| x.iter().map(|&c| f.mul(c, l)).collect::<Vec<_>>() == *y);
            log.check(found == scalar.is_some(), "isometry search disagrees with the scalar rule");
            if let Some(&l) = scalar {
                let (scaled, phi) = scalar_isometry(&bx, l);
                log.check(scaled.gram() == by.gram() && is_isometry(&scaled, &bx, &phi), "sqrt(l) is not an isometry");
            }
            tested += 1;
        }
    }
    log.note(format!("6 ordered pairs, {tested} isometry tests over {} units of kV4", rus.len()));
    let _ = seed;
    Ok(())
}

/// A random unit of kG with its inverse.
fn random_unit<R: Rng>(alg: &GroupAlgebra, rng: &mut R) -> (Vec<Fe>, Vec<Fe>) {
    let f = alg.field().clone();
    let n = alg.flat_len();
    loop {
        let u: Vec<Fe> = (0..n).map(|_| rng.gen_range(0..f.order()) as Fe).collect();
        let cols: Vec<Vec<Fe>> = (0..n as u32).map(|h| alg.mul(&u, &alg.element(h))).collect();
        let lu = Matrix::from_cols(&f, n, &cols);
        if let Some(inv) = lu.inverse() {
            return (u, inv.mul_vec(&alg.one()));
        }
    }
}

/// Left ideals kG e' for e' = e and a few random conjugates of e.
fn conjugate_summands(alg: &GroupAlgebra, e: &[Fe], count: usize, seed: u64) -> Vec<Subspace> {
    let f = alg.field().clone();
    let n = alg.flat_len();
    let mut r = symvert::rng(seed);
    let mut out = vec![Subspace::from_rows(&f, n, &alg.left_ideal(e))];
    for _ in 0..count {
        let (u, ui) = random_unit(alg, &mut r);
        let e2 = alg.mul(&alg.mul(&u, e), &ui);
        out.push(Subspace::from_rows(&f, n, &alg.left_ideal(&e2)));
    }
    out
}

fn fong(seed: u64, log: &mut Log) -> Result<()> {
    let mut count = 0;
    for name in ["s3", "d12", "a4", "s4", "sl23", "s5"] {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let simples = simple_modules(&g, &f, seed)?;
        let ps = pims(&g, &f, seed)?;
        let alg = GroupAlgebra::new(g.clone(), &f);
        let ident = Matrix::identity(&f, g.order());
        for (m, p) in simples.iter().zip(&ps) {
            if p.trivial_head || !is_selfdual(m)? {
                continue;
            }
            count += 1;
            let inv = invariant_forms(m);
            log.check(inv.symmetric.len() == 1, format!("{name}: symmetric forms on a {}-dim irreducible span {}", m.dim(), inv.symmetric.len()));
            if let Some(gram) = inv.symmetric.first() {
                let b = GForm::new(m.clone(), gram.clone())?;
                log.check(b.is_nondegenerate() && b.is_symplectic(), format!("{name}: form is not nondegenerate symplectic"));
            }
            log.check(blocks::regular_component(&p.module, &one(&g))?.is_none(), format!("{name}: B_1 nondegenerate on a P(M) summand"));
            for w in conjugate_summands(&alg, &p.idempotent, 2, seed) {
                log.check(!restricted_gram(&ident, &w).is_invertible(), format!("{name}: B_1 nondegenerate on kGe"));
            }
        }
    }
    log.note(format!("{count} nontrivial self-dual irreducibles"));
    Ok(())
}

fn trivial_cover(seed: u64, log: &mut Log) -> Result<()> {
    let mut parts = Vec::new();
    for (name, _) in suite::GROUPS {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let ps = pims(&g, &f, seed)?;
        let p = ps.first().filter(|p| p.trivial_head).ok_or_else(|| internal("no trivial-head PIM"))?;
        let two = g.two_part();
        let ratio = p.module.dim() / two;
        log.check(p.module.dim() % two == 0 && ratio % 2 == 1, format!("{name}: dim P(k) / |G|_2 = {}/{two}", p.module.dim()));
        match blocks::regular_component(&p.module, &one(&g))? {
            Some(phi) => {
                let pulled = phi.transpose().mul(&phi);
                let diag = (0..pulled.rows).any(|i| pulled.get(i, i) != 0);
                log.check(pulled.is_invertible() && diag, format!("{name}: pulled-back B_1 is not a diagonalizable form"));
            }
            None => log.check(false, format!("{name}: B_1 degenerate on every P(k) summand")),
        }
        let alg = GroupAlgebra::new(g.clone(), &f);
        let ident = Matrix::identity(&f, g.order());
        let extra = if g.order() > 120 { 1 } else { 2 };
        for w in conjugate_summands(&alg, &p.idempotent, extra, seed) {
            let r = restricted_gram(&ident, &w);
            let diag = (0..r.rows).any(|i| r.get(i, i) != 0);
            log.check(r.is_invertible() && diag, format!("{name}: B_1 on kGe is not a diagonalizable form"));
        }
        parts.push(format!("{name} {}", ratio));
    }
    log.note(format!("dim P(k)/|G|_2: {}", parts.join(", ")));
    Ok(())
}

/// Indecomposable modules up to isomorphism.
fn push_new(list: &mut Vec<ModuleRep>, m: ModuleRep, seed: u64) -> Result<()> {
    for x in list.iter() {
        if x.dim() == m.dim() && module_iso(x, &m, seed)?.is_some() {
            return Ok(());
        }
    }
    list.push(m);
    Ok(())
}

fn index_bound(seed: u64, log: &mut Log) -> Result<()> {
    let mut tested = 0;
    let mut case_one = 0;
    for (name, _) in suite::GROUPS {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let mut mods = Vec::new();
        for c in decompose(&suite::natural(&g, &f), seed)? {
            push_new(&mut mods, c.module, seed)?;
        }
        for p in pims(&g, &f, seed)? {
            push_new(&mut mods, p.module, seed)?;
        }
        for m in mods.into_iter().filter(|m| m.dim() <= 30) {
            let r = vertex::analyze(&m, seed)?;
            let Some(case) = r.case else { continue };
            tested += 1;
            log.check(case.index_bound, format!("{name}: symmetric vertex more than twice a Green vertex (dim {})", m.dim()));
            log.check(case.criteria_agree && case.vertex_consistent, format!("{name}: case criteria disagree (dim {})", m.dim()));
            if case.case == Case::I {
                case_one += 1;
                log.check(r.principal_block, format!("{name}: case I module outside the principal block"));
            }
            let v = &r.green.vertex;
            for s in &r.symmetric_vertices {
                let ok = g.conj_into(v, &s.subgroup).is_some() && s.subgroup.order() <= 2 * v.order();
                log.check(ok, format!("{name}: symmetric vertex does not contain a Green vertex with index <= 2"));
            }
        }
    }
    log.note(format!("{tested} symmetric-type summands, {case_one} in case I"));
    Ok(())
}

fn case_exemplars(seed: u64, log: &mut Log) -> Result<()> {
    // S5, D^[3,2]
    let g = suite::group("s5")?;
    let f = suite::field_for(&g);
    let d = suite::s5_d32(&g, &f)?;
    let r = vertex::analyze(&d.simple, seed)?;
    let case = r.case.as_ref().ok_or_else(|| internal("D^[3,2] not of symmetric type"))?;
    log.check(case.case == Case::I, format!("S5 D^[3,2]: case {:?}", case.case));
    let klein = |h: &Subgroup| h.order() == 4 && h.elements().iter().all(|&x| g.elem_order(x) <= 2);
    log.check(klein(&r.green.vertex), "S5 D^[3,2]: Green vertex is not a Klein four group");
    log.check(
        r.symmetric_vertices.len() == 1 && g.subgroup_conjugate(&r.symmetric_vertices[0].subgroup, &r.green.vertex).is_some(),
        "S5 D^[3,2]: symmetric vertex differs from the Green vertex",
    );
    // S3, 2-dim projective irreducible
    let g3 = suite::group("s3")?;
    let f3 = suite::field_for(&g3);
    let m = suite::s3_two_dim(&g3, &f3)?;
    let bl = blocks::block_decomposition(&g3, &f3, seed)?;
    let b = blocks::block_of_module(&m, &bl)?;
    log.check(!b.principal && b.real && b.defect_group.order() == 1, "S3 2-dim: not in a real defect-zero block");
    let r3 = vertex::analyze(&m, seed)?;
    log.check(r3.case.as_ref().map(|c| c.case) == Some(Case::II), "S3 2-dim: not case II");
    log.check(!r3.symmetric_vertices.is_empty() && r3.symmetric_vertices.iter().all(|s| s.subgroup.order() == 2), "S3 2-dim: |T| != 2");
    // GL(3,2):<tau>, natural module induced
    let gl = suite::group("gl32tau")?;
    let fl = suite::field_for(&gl);
    let (_, ind) = suite::gl32tau_induced(&gl, &fl)?;
    let rl = vertex::analyze(&ind, seed)?;
    log.check(rl.case.as_ref().map(|c| c.case) == Some(Case::III), "GL(3,2):tau: not case III");
    log.check(!rl.green.sources.is_empty() && rl.green.sources.iter().all(|s| !s.selfdual), "GL(3,2):tau: a source is self-dual");
    let v = &rl.green.vertex;
    log.check(
        !rl.symmetric_vertices.is_empty()
            && rl.symmetric_vertices.iter().all(|s| s.subgroup.order() == 2 * v.order() && gl.conj_into(v, &s.subgroup).is_some()),
        "GL(3,2):tau: [T:V] != 2",
    );
    log.note(format!(
        "S5 |V|={} |T|={}; S3 |T|=2; GL(3,2):tau dim {} |V|={} |T|={}",
        r.green.vertex.order(),
        r.symmetric_vertices.first().map_or(0, |s| s.subgroup.order()),
        ind.dim(),
        v.order(),
        rl.symmetric_vertices.first().map_or(0, |s| s.subgroup.order()),
    ));
    Ok(())
}

fn quadratic_pims(seed: u64, log: &mut Log) -> Result<()> {
    for (name, part) in [("s4", vec![3, 1]), ("s5", vec![3, 2])] {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let sp = specht::specht(&g, &f, &part)?;
        let d = &sp.simple;
        log.check(sp.b_te_e == 1, format!("{name} {part:?}: B(t e_T, e_T) != 1"));
        let b = GForm::nondegenerate(d.clone(), sp.form.clone())?;
        log.check(b.is_symplectic(), format!("{name} {part:?}: form on D is not symplectic"));
        log.check(blocks::q_t(&b, sp.row_reversal, &sp.tableau_vector) == 1, format!("{name} {part:?}: q_t(e_T) != 1 on D"));
        let rep = blocks::quadratic_type_pim(d, seed)?;
        log.check(rep.quadratic && rep.routes_agree, format!("{name} {part:?}: quadratic type not certified"));
        let pc = blocks::projective_cover(d, seed)?.ok_or_else(|| internal("D is not irreducible"))?;
        let mut a = vec![0; g.order()];
        a[sp.row_reversal as usize] = 1;
        log.check(blocks::regular_component(&pc.module, &a)?.is_some(), format!("{name} {part:?}: B_t degenerate on every P(D) summand"));
    }
    let g = suite::group("c3c4")?;
    let f = suite::field_for(&g);
    let two = simple_modules(&g, &f, seed)?.into_iter().find(|m| m.dim() == 2).ok_or_else(|| internal("C3:C4 has no 2-dim irreducible"))?;
    let rep = blocks::quadratic_type_pim(&two, seed)?;
    log.check(!rep.quadratic && rep.routes_agree, "C3:C4: projective cover reported quadratic");
    let pc = blocks::projective_cover(&two, seed)?.ok_or_else(|| internal("no projective cover"))?;
    log.check(forms::symmetric_form(&pc.module).is_none(), "C3:C4: projective cover has a symmetric form");
    let mut count = 0;
    let mut quad = 0;
    for (name, _) in suite::GROUPS {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let simples = simple_modules(&g, &f, seed)?;
        let ps = pims(&g, &f, seed)?;
        for (m, p) in simples.iter().zip(&ps) {
            if p.trivial_head || !is_selfdual(m)? {
                continue;
            }
            let r = blocks::quadratic_type_pim(m, seed)?;
            count += 1;
            quad += r.quadratic as usize;
            log.check(r.routes_agree, format!("{name}: routes disagree on a {}-dim irreducible", m.dim()));
        }
    }
    log.note(format!("{count} suite irreducibles tested, {quad} of quadratic type"));
    Ok(())
}

fn block_samples(g: &Arc<GroupTable>, f: &Field, b: &BlockInfo, all: &[BlockInfo], seed: u64) -> Result<(Vec<ModuleRep>, Vec<ModuleRep>)> {
    let mut mods = Vec::new();
    for p in pims(g, f, seed)? {
        push_new(&mut mods, p.module, seed)?;
    }
    for c in decompose(&suite::natural(g, f), seed)? {
        push_new(&mut mods, c.module, seed)?;
    }
    let simples = simple_modules(g, f, seed)?;
    let mut samples = Vec::new();
    for m in mods.into_iter().chain(simples.iter().cloned()) {
        if blocks::block_of_module(&m, all)?.index == b.index && forms::symmetric_form(&m).is_some() {
            samples.push(m);
        }
    }
    let mut irr = Vec::new();
    for m in simples {
        if blocks::block_of_module(&m, all)?.index == b.index {
            irr.push(m);
        }
    }
    Ok((samples, irr))
}

fn real_blocks(seed: u64, log: &mut Log) -> Result<()> {
    let mut parts = Vec::new();
    for name in ["s3", "d12", "sl23", "s4"] {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let bl = blocks::block_decomposition(&g, &f, seed)?;
        log.check(blocks::verify_blocks(&g, &f, &bl), format!("{name}: block idempotents fail"));
        let sylow = g.sylow2().order();
        let mut real = 0;
        for b in &bl {
            let Some(e) = &b.extended_defect_group else { continue };
            real += 1;
            let d = &b.defect_group;
            log.check(d.is_subgroup_of(e) && (e.order() == d.order() || e.order() == 2 * d.order()), format!("{name}: D, E not nested with index <= 2"));
            if b.principal {
                log.check(d.order() == sylow && e.order() == sylow, format!("{name}: principal block has D or E not Sylow"));
            }
            let (samples, irr) = block_samples(&g, &f, b, &bl, seed)?;
            let rep = blocks::verify_vertex_block(b, &samples, &irr, seed)?;
            log.check(rep.contained.iter().all(|c| c.1), format!("{name} block {}: a symmetric vertex is not inside E", b.index));
            log.check(rep.realised_by.is_some(), format!("{name} block {}: no self-dual irreducible has symmetric vertex E", b.index));
            if g.order() <= 24 {
                let t = blocks::theta_check(&g, &f, b)?;
                log.check(t.passed(), format!("{name} block {}: explicit Theta check failed {t:?}", b.index));
            }
            parts.push(format!("{name}#{} |D|={} |E|={} samples {}", b.index, d.order(), e.order(), samples.len()));
        }
        log.check(real >= 1, format!("{name}: no real block"));
    }
    log.note(parts.join(", "));
    Ok(())
}

fn scott(seed: u64, log: &mut Log) -> Result<()> {
    let mut parts = Vec::new();
    for name in ["s3", "s4", "d12"] {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let v = g.sylow2();
        let z = ModuleRep::trivial(g.clone(), Arc::new(v), &f);
        let s = vertex::scott_component(&z, seed)?;
        let triv = suite::trivial(&g, &f);
        log.check(s.multiplicity == 1 && s.unique_by_multiplicity() && s.others_even, format!("{name}: multiplicity does not single out M"));
        log.check(s.restricted_witness.is_some(), format!("{name}: Z is not a form component of Res M"));
        log.check(s.forms_nondegenerate && s.forms_checked >= 2, format!("{name}: a V-projective form is degenerate on M"));
        log.check(
            !hom_space(&s.module, &triv).is_empty() && !hom_space(&triv, &s.module).is_empty(),
            format!("{name}: Scott module lacks a trivial quotient or submodule"),
        );
        log.check(blocks::in_principal_block(&s.module, seed)?, format!("{name}: Scott module outside the principal block"));
        parts.push(format!("{name} dim {}", s.module.dim()));
    }
    let g = suite::group("s4")?;
    let f = suite::field_for(&g);
    let z = suite::v4_in_s4_module(&g, &f)?;
    let s = vertex::scott_component(&z, seed)?;
    log.check(s.multiplicity % 2 == 1 && s.multiplicity == 1, "V4 <= S4: distinguished component does not have multiplicity one");
    log.check(s.restricted_witness.is_some(), "V4 <= S4: Z is not a form component of Res M");
    log.check(s.forms_nondegenerate && s.forms_checked >= 2, "V4 <= S4: a V-projective form is degenerate on M");
    log.check(blocks::in_principal_block(&s.module, seed)?, "V4 <= S4: M outside the principal block");
    parts.push(format!(
        "V4<=S4 dim {} of {} vertex-V classes ({} of odd multiplicity)",
        s.module.dim(),
        s.vertex_classes.len(),
        s.odd_classes
    ));
    log.note(parts.join(", "));
    Ok(())
}

/// M | Ind_H^G Res_H M by summand search, one indecomposable summand Z of Res_H M at a time.
fn brute_projective(m: &ModuleRep, h: &Subgroup, seed: u64) -> Result<bool> {
    let whole = m.group().whole();
    let mut zs: Vec<ModuleRep> = Vec::new();
    for c in decompose(&m.restrict(h), seed)? {
        push_new(&mut zs, c.module, seed)?;
    }
    for z in zs {
        for c in decompose(&z.induce(&whole), seed)? {
            if c.module.dim() == m.dim() && module_iso(&c.module, m, seed)?.is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn oracles(seed: u64, log: &mut Log) -> Result<()> {
    let names: Vec<&str> = suite::GROUPS.iter().map(|g| g.0).filter(|n| suite::group(n).map(|g| g.order() <= 24).unwrap_or(false)).collect();
    let mut proj_tests = 0;
    let mut sym_tests = 0;
    let mut r = symvert::rng(seed ^ 0x11f7);
    for name in &names {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let mut mods = vec![suite::trivial(&g, &f)];
        for m in simple_modules(&g, &f, seed)? {
            push_new(&mut mods, m, seed)?;
        }
        for p in pims(&g, &f, seed)? {
            push_new(&mut mods, p.module, seed)?;
        }
        for c in decompose(&suite::natural(&g, &f), seed)? {
            push_new(&mut mods, c.module, seed)?;
        }
        let lat = g.two_lattice(vertex::LATTICE_BOUND)?;
        for m in mods.iter().filter(|m| m.dim() <= 8) {
            for c in &lat.classes {
                let t = vertex::is_projective(m, &c.rep)?.is_some();
                log.check(t == brute_projective(m, &c.rep, seed)?, format!("{name}: projectivity mismatch at |H|={} dim {}", c.rep.order(), m.dim()));
                proj_tests += 1;
            }
            let mut bases: Vec<Matrix> = forms::symmetric_nondegenerate_basis(m);
            if bases.is_empty() {
                continue;
            }
            let slice = invariant_forms(m).symmetric;
            for _ in 0..3 {
                let mut gram = Matrix::zeros(&f, m.dim(), m.dim());
                for s in &slice {
                    gram.axpy(r.gen_range(0..f.order()) as Fe, s);
                }
                if gram.is_invertible() {
                    bases.push(gram);
                }
            }
            let forms: Vec<GForm> = bases.into_iter().map(|b| GForm::nondegenerate(m.clone(), b)).collect::<symvert::Result<_>>()?;
            for c in &lat.classes {
                let res: Vec<bool> = forms
                    .iter()
                    .map(|b| vertex::is_sym_projective(m, b, &c.rep).map(|x| x.is_some()))
                    .collect::<symvert::Result<_>>()?;
                log.check(res.iter().all(|&x| x == res[0]), format!("{name}: symmetric projectivity depends on the base form"));
                sym_tests += 1;
            }
        }
    }
    let mid = Instant::now();
    let lifts = lift_instances(&names, 200, seed, log)?;
    log.note(format!(
        "{proj_tests} projectivity comparisons, {sym_tests} base-form comparisons, {lifts} lifting instances ({} ms)",
        mid.elapsed().as_millis()
    ));
    Ok(())
}

/// e = lift of a = e_K + x with K of odd order and x in J(kG), sigma the antipode.
fn lift_instances(names: &[&str], total: usize, seed: u64, log: &mut Log) -> Result<usize> {
    let mut r = symvert::rng(seed ^ 0x1f7);
    let mut setups = Vec::new();
    for name in names {
        let g = suite::group(name)?;
        let f = suite::field_for(&g);
        let alg = GroupAlgebra::new(g.clone(), &f);
        let corners = algebra::primitive_idempotents(&alg, &mut r)?;
        let j = algebra::radical(&alg, &corners);
        let mut odd: Vec<u32> = (1..g.order() as u32).filter(|&x| g.elem_order(x) % 2 == 1).collect();
        if odd.is_empty() {
            odd.push(0);
        }
        setups.push((name.to_string(), g, f, alg, j, odd));
    }
    let mut done = 0;
    for i in 0..total {
        let (name, g, f, alg, j, odd) = &setups[i % setups.len()];
        let k = g.closure(&[odd[r.gen_range(0..odd.len())]]);
        let mut a = vec![0; g.order()];
        for &x in k.elements() {
            a[x as usize] = 1;
        }
        for row in j.basis_vecs() {
            f.axpy(&mut a, &row, r.gen_range(0..f.order()) as Fe);
        }
        let sigma = |x: &[Fe]| alg.antipode(x);
        let e = algebra::lift_selfadjoint_idempotent(alg, &sigma, j, &a, &mut r)?;
        log.check(alg.mul(&e, &e) == e, format!("{name}: lift is not idempotent"));
        log.check(alg.antipode(&e) == e, format!("{name}: lift is not sigma-fixed"));
        log.check(j.contains(&algebra::add(&e, &a)), format!("{name}: lift differs from a outside J"));
        let sa = alg.antipode(&a);
        let span: Vec<Vec<Fe>> = (0..g.order() as u32).map(|x| alg.mul(&alg.mul(&a, &alg.element(x)), &sa)).collect();
        let w = Subspace::from_rows(f, g.order(), &span);
        log.check(w.contains(&e), format!("{name}: lift is not in a A sigma(a)"));
        done += 1;
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_known() {
        assert_eq!(suite_checks("paper-examples").unwrap().len(), 10);
        assert_eq!(suite_checks("oracle-small").unwrap(), vec![11]);
        assert!(matches!(suite_checks("nope"), Err(CliError::UnknownSuite(_))));
    }

    #[test]
    fn paired_isometry_finds_the_paired_module() {
        let g = suite::group("s3").unwrap();
        let f = suite::field_for(&g);
        let m = suite::s3_two_dim(&g, &f).unwrap();
        let (pm, pg) = paired_module(&m);
        let p = GForm::nondegenerate(pm, pg).unwrap();
        assert!(paired_isometry(&m, &p).is_some());
        let b = GForm::nondegenerate(m.clone(), forms::symmetric_form(&m).unwrap()).unwrap();
        let two = GForm::orthogonal_sum(&[&b, &b]);
        assert!(paired_isometry(&m, &two).is_none());
    }
}
