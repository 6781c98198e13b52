//! Relative traces, projectivity tests, Green vertices and sources,
//! symmetric vertices and their case classification, projectivity of
//! forms, and the distinguished component of an induced module.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::field::Fe;
use crate::forms::{self, induce_form, is_isometry, Adjoint, GForm};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::{Matrix, Solve, Subspace};
use crate::rep::{self, coord_matrix, decompose, divides_induced, hom_space, local_end, module_iso, LocalEnd, ModuleRep};
use crate::{rng, Error, Result};

/// Bound on the order of a Sylow 2-subgroup for subgroup-lattice searches.
pub const LATTICE_BOUND: usize = 64;

/// tr_H^K(f) = sum over a left transversal of rho(t) f rho(t)^-1.
pub fn rel_trace(m: &ModuleRep, f: &Matrix, h: &Subgroup, k: &Subgroup) -> Result<Matrix> {
    if !h.is_subgroup_of(k) || !k.is_subgroup_of(m.acting()) {
        return Err(Error::Precondition("trace needs H <= K <= acting group".into()));
    }
    if h.gens().iter().any(|&x| m.act(x).mul(f) != f.mul(m.act(x))) {
        return Err(Error::Precondition("map does not commute with H".into()));
    }
    Ok(m.rel_trace(f, h, k))
}

/// tr_1^G(x y^T G) = (sum over g of (g x)(g y)^T) G, for an invariant Gram G.
fn rank_one_trace(m: &ModuleRep, x: &[Fe], y: &[Fe], gram: &Matrix) -> Matrix {
    let f = m.field();
    let d = m.dim();
    let mut acc = Matrix::zeros(f, d, d);
    for r in m.action() {
        let gx = r.mul_vec(x);
        let gy = r.mul_vec(y);
        for (i, &a) in gx.iter().enumerate() {
            if a != 0 {
                f.axpy(acc.row_mut(i), &gy, a);
            }
        }
    }
    acc.mul(gram)
}

/// Traces tr_1^G(E_ij) by rank-one sums.
fn unit_traces(m: &ModuleRep) -> Vec<(Matrix, Matrix)> {
    let f = m.field();
    let d = m.dim();
    let g = m.group();
    let acting = m.acting();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Matrix::zeros(f, d, d);
            for &x in acting.elements() {
                let a = m.act(x);
                let b = m.act(g.inv(x));
                let col = a.col(i);
                let row = b.row(j);
                for (r, &c) in col.iter().enumerate() {
                    if c != 0 {
                        f.axpy(acc.row_mut(r), row, c);
                    }
                }
            }
            let mut e = Matrix::zeros(f, d, d);
            e.set(i, j, 1);
            out.push((e, acc));
        }
    }
    out
}

/// Basis of E_H(M) paired with traces to the acting group.
fn traces_from(m: &ModuleRep, h: &Subgroup) -> Vec<(Matrix, Matrix)> {
    if h.is_trivial() {
        return unit_traces(m);
    }
    let res = m.restrict(h);
    hom_space(&res, &res).into_iter().map(|a| {
        let t = m.rel_trace(&a, h, m.acting());
        (a, t)
    }).collect()
}

/// Certificate of relative projectivity: tr_H^G(alpha) = trace, invertible.
#[derive(Clone, Debug)]
pub struct ProjCert {
    pub alpha: Matrix,
    pub trace: Matrix,
}

/// Higman's criterion: the identity lies in tr_H^G(E_H(M)).
pub fn is_projective(m: &ModuleRep, h: &Subgroup) -> Result<Option<ProjCert>> {
    let pairs = traces_from(m, h);
    if let Some((a, t)) = pairs.iter().find(|(_, t)| t.is_invertible()) {
        return Ok(Some(ProjCert { alpha: a.clone(), trace: t.clone() }));
    }
    // general modules: solve sum c_i tr(a_i) = 1
    let f = m.field();
    let d = m.dim();
    if pairs.is_empty() {
        return Ok(if d == 0 { Some(ProjCert { alpha: Matrix::zeros(f, 0, 0), trace: Matrix::zeros(f, 0, 0) }) } else { None });
    }
    let cols: Vec<Vec<Fe>> = pairs.iter().map(|(_, t)| t.data.clone()).collect();
    let sys = Matrix::from_cols(f, d * d, &cols);
    match sys.solve(&Matrix::identity(f, d).data) {
        Solve::Solution(c) => {
            let mut alpha = Matrix::zeros(f, d, d);
            for (ci, (a, _)) in c.iter().zip(&pairs) {
                if *ci != 0 {
                    alpha.axpy(*ci, a);
                }
            }
            Ok(Some(ProjCert { alpha, trace: Matrix::identity(f, d) }))
        }
        Solve::Inconsistent(_) => Ok(None),
    }
}

/// Projectivity test for indecomposable M: some basis trace is a unit.
pub fn is_projective_local(m: &ModuleRep, h: &Subgroup) -> Option<ProjCert> {
    traces_from(m, h).into_iter().find(|(_, t)| t.is_invertible()).map(|(alpha, trace)| ProjCert { alpha, trace })
}

/// Green vertex with its sources.
#[derive(Clone, Debug)]
pub struct GreenVertex {
    pub vertex: Subgroup,
    /// index of the G-class in the 2-subgroup lattice
    pub class: usize,
    pub cert: ProjCert,
    pub sources: Vec<Source>,
}

#[derive(Clone, Debug)]
pub struct Source {
    pub module: ModuleRep,
    pub selfdual: bool,
    pub symmetric_type: bool,
}

/// Index of a lattice subgroup, and its class.
fn lattice_class(g: &GroupTable, h: &Subgroup) -> Result<usize> {
    let lat = g.two_lattice(LATTICE_BOUND)?;
    if let Ok(i) = lat.subgroups.binary_search(h) {
        return Ok(lat.class_of[i]);
    }
    let key = g.conjugacy_key(h);
    lat.classes
        .iter()
        .position(|c| c.rep.order() == h.order() && g.conjugacy_key(&c.rep) == key)
        .ok_or_else(|| Error::Internal("subgroup outside the 2-lattice".into()))
}

/// Subgroups of index 2 in H, from the lattice of the Sylow subgroup.
fn maximal_subgroups(g: &GroupTable, h: &Subgroup) -> Result<Vec<Subgroup>> {
    if h.order() == 1 {
        return Ok(Vec::new());
    }
    let subs = g.all_subgroups_of(h, 4096)?;
    Ok(subs.into_iter().filter(|s| s.order() * 2 == h.order()).collect())
}

/// Green vertex by descent from the Sylow subgroup through index-2 subgroups;
/// sources are the components Z of Res_V M with M | Ind_V^G Z.
pub fn green_vertex(m: &ModuleRep, seed: u64) -> Result<GreenVertex> {
    let g = m.group().clone();
    if m.acting().order() != g.order() {
        return Err(Error::Precondition("vertices are computed for kG-modules".into()));
    }
    let lat = g.two_lattice(LATTICE_BOUND)?;
    let mut known: Vec<Option<bool>> = vec![None; lat.classes.len()];
    let trivial = g.trivial();
    let (vertex, cert) = if let Some(c) = is_projective_local(m, &trivial) {
        (trivial, c)
    } else {
        let mut h = lat.sylow.clone();
        let mut cert = is_projective_local(m, &h).ok_or_else(|| Error::Internal("not projective relative to a Sylow subgroup".into()))?;
        'descend: loop {
            for k in maximal_subgroups(&g, &h)? {
                let cls = lattice_class(&g, &k)?;
                if known[cls] == Some(false) {
                    continue;
                }
                match is_projective_local(m, &k) {
                    Some(c) => {
                        known[cls] = Some(true);
                        h = k;
                        cert = c;
                        continue 'descend;
                    }
                    None => known[cls] = Some(false),
                }
            }
            break;
        }
        (h, cert)
    };
    let class = lattice_class(&g, &vertex)?;
    let sources = sources_of(m, &vertex, seed)?;
    if sources.is_empty() {
        return Err(Error::Internal("no source found".into()));
    }
    Ok(GreenVertex { vertex, class, cert, sources })
}

fn sources_of(m: &ModuleRep, v: &Subgroup, seed: u64) -> Result<Vec<Source>> {
    let res = m.restrict(v);
    let comps = decompose(&res, seed)?;
    let mut out: Vec<Source> = Vec::new();
    for c in comps {
        if divides_induced(m, &c.module).is_none() {
            continue;
        }
        let mut dup = false;
        for s in &out {
            if module_iso(&s.module, &c.module, seed)?.is_some() {
                dup = true;
                break;
            }
        }
        if dup {
            continue;
        }
        let selfdual = rep::is_selfdual(&c.module)?;
        let symmetric_type = selfdual && forms::symmetric_form(&c.module).is_some();
        out.push(Source { module: c.module, selfdual, symmetric_type });
    }
    Ok(out)
}

/// sigma-fixed part of E_H(M) with the traces of its basis.
pub fn sym_traces(m: &ModuleRep, base: &GForm, h: &Subgroup) -> Result<Vec<(Matrix, Matrix)>> {
    let adj = base.adjoint()?;
    if !base.is_symmetric() {
        return Err(Error::Precondition("base form must be symmetric".into()));
    }
    if h.is_trivial() {
        // x (x) y + y (x) x and x (x) x, with (x (x) y) = x y^T G
        let f = m.field();
        let d = m.dim();
        let gram = base.gram();
        let unit = |i: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        };
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                let (x, y) = (unit(i), unit(j));
                let mut a = Matrix::zeros(f, d, d);
                a.set(i, j, 1);
                if i != j {
                    a.set(j, i, 1);
                }
                let alpha = a.mul(gram);
                let mut t = rank_one_trace(m, &x, &y, gram);
                if i != j {
                    t.add_assign(&rank_one_trace(m, &y, &x, gram));
                }
                out.push((alpha, t));
            }
        }
        return Ok(out);
    }
    let res = m.restrict(h);
    let basis = hom_space(&res, &res);
    let fixed = adj.fixed_subspace(&basis);
    Ok(fixed.into_iter().map(|a| {
        let t = m.rel_trace(&a, h, m.acting());
        (a, t)
    }).collect())
}

/// Certificate of symmetric projectivity: sigma(alpha) = alpha and
/// theta = tr_H^G(alpha) is a unit, so B_theta is H-projective.
#[derive(Clone, Debug)]
pub struct SymCert {
    pub alpha: Matrix,
    pub theta: Matrix,
}

/// Symmetric Higman criterion for indecomposable M with base form B.
pub fn is_sym_projective(m: &ModuleRep, base: &GForm, h: &Subgroup) -> Result<Option<SymCert>> {
    Ok(sym_traces(m, base, h)?.into_iter().find(|(_, t)| t.is_invertible()).map(|(alpha, theta)| SymCert { alpha, theta }))
}

/// Base form: the first nondegenerate vector of the symmetric slice.
pub fn base_form(m: &ModuleRep) -> Result<GForm> {
    let g = forms::symmetric_form(m).ok_or_else(|| Error::Precondition("module is not of symmetric type".into()))?;
    GForm::nondegenerate(m.clone(), g)
}

/// Isometry (M, B_theta) -> Ind_H^G(alpha M, Bhat_alpha).
#[derive(Clone, Debug)]
pub struct FormProjCert {
    pub alpha: Matrix,
    pub induced: GForm,
    pub isometry: Matrix,
}

/// Whether B_theta is H-projective: theta in tr_H^G of the sigma-fixed part
/// of E_H(M). When it is, builds and verifies the isometry tr_H^G(1 (x) alpha).
pub fn form_is_h_projective(base: &GForm, theta: &Matrix, h: &Subgroup) -> Result<Option<FormProjCert>> {
    let m = base.module();
    let f = m.field().clone();
    let d = m.dim();
    let bt = theta.transpose().mul(base.gram());
    if bt != bt.transpose() || !bt.is_invertible() {
        return Err(Error::Precondition("B_theta must be symmetric and nondegenerate".into()));
    }
    let pairs = sym_traces(m, base, h)?;
    if pairs.is_empty() {
        return Ok(None);
    }
    let cols: Vec<Vec<Fe>> = pairs.iter().map(|(_, t)| t.data.clone()).collect();
    let sys = Matrix::from_cols(&f, d * d, &cols);
    let c = match sys.solve(&theta.data) {
        Solve::Solution(c) => c,
        Solve::Inconsistent(_) => return Ok(None),
    };
    let mut alpha = Matrix::zeros(&f, d, d);
    for (ci, (a, _)) in c.iter().zip(&pairs) {
        if *ci != 0 {
            alpha.axpy(*ci, a);
        }
    }
    let (induced, isometry) = higman_isometry(base, &alpha, h)?;
    let btheta = GForm::new(m.clone(), bt)?;
    if !is_isometry(&btheta, &induced, &isometry) {
        return Err(Error::Internal("constructed map is not an isometry".into()));
    }
    let image = isometry.column_space();
    if image.dim() != d || !forms::is_nondegenerate_on(&induced, &image) {
        return Err(Error::Internal("image of the isometry is degenerate".into()));
    }
    Ok(Some(FormProjCert { alpha, induced, isometry }))
}

/// For sigma-fixed alpha in E_H(M): the H-form Bhat(alpha m1, alpha m2) = B(alpha m1, m2)
/// on alpha M, induced to G, and phi = tr_H^G(1 (x) alpha).
pub fn higman_isometry(base: &GForm, alpha: &Matrix, h: &Subgroup) -> Result<(GForm, Matrix)> {
    let m = base.module();
    let g = m.group().clone();
    let f = m.field().clone();
    let d = m.dim();
    let am = alpha.column_space();
    let k = am.dim();
    let res = m.restrict(h);
    let lmod = res.submodule(&am)?;
    let mut bhat = Matrix::zeros(&f, k, k);
    let ws: Vec<Vec<Fe>> = (0..k)
        .map(|j| match alpha.solve(am.basis().row(j)) {
            Solve::Solution(w) => Ok(w),
            Solve::Inconsistent(_) => Err(Error::Internal("image basis outside image".into())),
        })
        .collect::<Result<_>>()?;
    for i in 0..k {
        for j in 0..k {
            bhat.set(i, j, base.eval(am.basis().row(i), &ws[j]));
        }
    }
    let lform = GForm::new(lmod, bhat)?;
    let induced = induce_form(&lform, &g.whole());
    let t = g.left_transversal(&g.whole(), h);
    let coord = coord_matrix(&am).mul(alpha);
    let mut phi = Matrix::zeros(&f, t.len() * k, d);
    for (i, &ti) in t.reps.iter().enumerate() {
        phi.set_block(i * k, 0, &coord.mul(m.act(g.inv(ti))));
    }
    Ok((induced, phi))
}

/// A symmetric vertex class with its certificate.
#[derive(Clone, Debug)]
pub struct SymVertex {
    pub subgroup: Subgroup,
    pub class: usize,
    pub cert: SymCert,
}

/// All minimal classes T with M symmetrically T-projective: V itself, or else
/// every class of order 2|V| containing a conjugate of V that passes.
pub fn symmetric_vertices(m: &ModuleRep, base: &GForm, green: &GreenVertex) -> Result<Vec<SymVertex>> {
    let g = m.group().clone();
    let v = &green.vertex;
    if let Some(cert) = is_sym_projective(m, base, v)? {
        return Ok(vec![SymVertex { subgroup: v.clone(), class: green.class, cert }]);
    }
    let lat = g.two_lattice(LATTICE_BOUND)?;
    let mut out = Vec::new();
    for (ci, c) in lat.classes.iter().enumerate() {
        if c.rep.order() != 2 * v.order() || g.conj_into(v, &c.rep).is_none() {
            continue;
        }
        if let Some(cert) = is_sym_projective(m, base, &c.rep)? {
            out.push(SymVertex { subgroup: c.rep.clone(), class: ci, cert });
        }
    }
    if out.is_empty() {
        return Err(Error::Internal("no symmetric vertex among index-2 overgroups of the Green vertex".into()));
    }
    Ok(out)
}

/// Quadratic map phi -> residue of c(phi, phi), where phi^T G_Y psi = Gram(B_c)
/// relative to a base form G_X on a module with local endomorphism ring.
struct PullbackQuadric<'a> {
    gx_inv_t: Matrix,
    gy: &'a Matrix,
    local: &'a LocalEnd,
}

impl PullbackQuadric<'_> {
    fn value(&self, phi: &Matrix, psi: &Matrix) -> Fe {
        let x = phi.transpose().mul(self.gy).mul(psi);
        let c = self.gx_inv_t.mul(&x.transpose());
        self.local.residue(&c)
    }

    /// Some phi in the span with phi^T G_Y phi nondegenerate, if any exists over
    /// the algebraic closure (the quadric has a nonzero coefficient).
    fn witness(&self, basis: &[Matrix]) -> Option<Matrix> {
        let q: Vec<Fe> = basis.iter().map(|p| self.value(p, p)).collect();
        if let Some(i) = q.iter().position(|&x| x != 0) {
            return Some(basis[i].clone());
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if self.value(&basis[i], &basis[j]) ^ self.value(&basis[j], &basis[i]) != 0 {
                    return Some(basis[i].add(&basis[j]));
                }
            }
        }
        None
    }
}

/// Some phi in span(homs): X -> Y with phi^T G_Y phi nondegenerate, given a
/// nondegenerate invariant Gram G_X on X and the local End(X). Exact: a
/// witness exists over the algebraic closure iff one is returned.
pub fn nondegenerate_pullback(homs: &[Matrix], gx: &Matrix, gy: &Matrix, local: &LocalEnd) -> Option<Matrix> {
    let inv = gx.inverse()?;
    let q = PullbackQuadric { gx_inv_t: inv.transpose(), gy, local };
    let w = q.witness(homs)?;
    debug_assert!(w.transpose().mul(gy).mul(&w).is_invertible());
    Some(w)
}

/// A G-map psi: M -> Ind_V^G(Z, B0) pulling the induced form back to a
/// nondegenerate form on M: M is a B0^G-component of Ind_V^G Z.
pub fn component_of_induced(m: &ModuleRep, z: &GForm, base: &GForm, local: &LocalEnd) -> Option<Matrix> {
    let g = m.group();
    let ind = induce_form(z, &g.whole());
    let homs = hom_space(m, ind.module());
    nondegenerate_pullback(&homs, base.gram(), ind.gram(), local)
}

/// theta (sigma-fixed unit of E_G(M)) and a V-map phi: Z -> Res_V M with
/// phi^T (theta^T G) phi nondegenerate: Z is a B_theta-component of Res_V M.
pub fn source_component_form(base: &GForm, z: &ModuleRep) -> Result<Option<(Matrix, Matrix)>> {
    let m = base.module();
    let f = m.field().clone();
    let v = z.acting().as_ref().clone();
    let local_m = local_end(m)?;
    let local_z = local_end(z)?;
    let z_form = forms::symmetric_form(z)
        .or_else(|| forms::invariant_forms(z).all.into_iter().find(|g| g.is_invertible()));
    let Some(gz) = z_form else { return Ok(None) };
    let res = m.restrict(&v);
    let homs = hom_space(z, &res);
    let adj = base.adjoint()?;
    let fixed = adj.fixed_subspace(&local_m.basis);
    let d = m.dim();
    let one = Matrix::identity(&f, d);
    let gz_inv_t = gz.inverse().ok_or(Error::Degenerate)?.transpose();
    let quadric = |th: &Matrix| {
        let gy = th.transpose().mul(base.gram());
        let q = PullbackQuadric { gx_inv_t: gz_inv_t.clone(), gy: &gy, local: &local_z };
        q.witness(&homs).map(|phi| (q.value(&phi, &phi), phi))
    };
    let value_at = |th: &Matrix, phi: &Matrix| {
        let gy = th.transpose().mul(base.gram());
        PullbackQuadric { gx_inv_t: gz_inv_t.clone(), gy: &gy, local: &local_z }.value(phi, phi)
    };
    let mut found_any = false;
    // theta + mu for mu in k, then theta + theta' + mu: Q and the residue are both affine in mu
    let mut cands: Vec<Matrix> = fixed.clone();
    for i in 0..fixed.len() {
        for j in i + 1..fixed.len() {
            cands.push(fixed[i].add(&fixed[j]));
        }
    }
    for th in &cands {
        let Some((fa, phi)) = quadric(th) else { continue };
        found_any = true;
        let f1 = value_at(&one, &phi);
        let ra = local_m.residue(th);
        for mu in f.elements() {
            if ra ^ mu == 0 || fa ^ f.mul(mu, f1) == 0 {
                continue;
            }
            let theta = th.add(&one.scaled(mu));
            debug_assert!(phi.transpose().mul(&theta.transpose().mul(base.gram())).mul(&phi).is_invertible());
            return Ok(Some((theta, phi)));
        }
    }
    if found_any {
        return Err(Error::Field("field too small to adjust the form to a unit; raise the field degree".into()));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    I,
    II,
    III,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: Case,
    /// psi: M -> Ind_V^G Z pulling back a nondegenerate form (case I)
    pub induced_witness: Option<Matrix>,
    /// (theta, phi) with Z a B_theta-component of Res_V M (case I)
    pub restricted_witness: Option<(Matrix, Matrix)>,
    /// both constructive criteria agree
    pub criteria_agree: bool,
    /// case I iff the Green vertex is a symmetric vertex
    pub vertex_consistent: bool,
    /// every symmetric vertex has index at most 2 over a conjugate of V
    pub index_bound: bool,
}

/// Which of the three cases relating symmetric and green vertices holds.
pub fn classify_case(m: &ModuleRep, base: &GForm, green: &GreenVertex, sym: &[SymVertex]) -> Result<CaseReport> {
    let g = m.group().clone();
    let v = &green.vertex;
    let vertex_is_sym = sym.iter().any(|s| s.subgroup.order() == v.order());
    let index_bound = sym.iter().all(|s| {
        (s.subgroup.order() == v.order() || s.subgroup.order() == 2 * v.order()) && g.conj_into(v, &s.subgroup).is_some()
    });
    let z = &green.sources[0];
    if !z.selfdual {
        return Ok(CaseReport {
            case: Case::III,
            induced_witness: None,
            restricted_witness: None,
            criteria_agree: true,
            vertex_consistent: !vertex_is_sym,
            index_bound,
        });
    }
    let local = local_end(m)?;
    let induced_witness = match forms::symmetric_form(&z.module) {
        Some(b0) => {
            let zf = GForm::nondegenerate(z.module.clone(), b0)?;
            component_of_induced(m, &zf, base, &local)
        }
        None => None,
    };
    let restricted_witness = source_component_form(base, &z.module)?;
    let case = if induced_witness.is_some() { Case::I } else { Case::II };
    let criteria_agree = induced_witness.is_some() == restricted_witness.is_some();
    Ok(CaseReport {
        case,
        induced_witness,
        restricted_witness,
        criteria_agree,
        vertex_consistent: (case == Case::I) == vertex_is_sym,
        index_bound,
    })
}

/// Checks B_theta (T-projective) against every 2-subgroup class H:
/// H-projective iff T is conjugate into H. Returns (class, projective, expected).
pub fn verify_t_leq_h(base: &GForm, theta: &Matrix, t: &Subgroup) -> Result<Vec<(usize, bool, bool)>> {
    let g = base.module().group().clone();
    let lat = g.two_lattice(LATTICE_BOUND)?;
    let mut out = Vec::new();
    for (ci, c) in lat.classes.iter().enumerate() {
        let proj = form_is_h_projective(base, theta, &c.rep)?.is_some();
        let expected = g.conj_into(t, &c.rep).is_some();
        out.push((ci, proj, expected));
    }
    Ok(out)
}

/// If tr_H^G(alpha theta sigma(alpha)) = theta, the map tr_H^G(1 (x) sigma(alpha))
/// embeds (M, B_theta) isometrically in Ind_H^G Res_H (M, B_theta).
pub fn strong_projectivity_isometry(base: &GForm, theta: &Matrix, alpha: &Matrix, h: &Subgroup) -> Result<Option<Matrix>> {
    let m = base.module();
    let g = m.group().clone();
    let adj = base.adjoint()?;
    let sa = adj.apply(alpha);
    let prod = alpha.mul(theta).mul(&sa);
    if m.rel_trace(&prod, h, m.acting()) != *theta {
        return Ok(None);
    }
    let bt = GForm::new(m.clone(), theta.transpose().mul(base.gram()))?;
    let ind = induce_form(&bt.restrict_group(h), &g.whole());
    let t = g.left_transversal(&g.whole(), h);
    let d = m.dim();
    let mut phi = Matrix::zeros(m.field(), t.len() * d, d);
    for (i, &ti) in t.reps.iter().enumerate() {
        phi.set_block(i * d, 0, &sa.mul(m.act(g.inv(ti))));
    }
    Ok(is_isometry(&bt, &ind, &phi).then_some(phi))
}

/// Search for alpha in E_H(M) with tr_H^G(alpha theta sigma(alpha)) = theta.
pub fn find_strong_projectivity(base: &GForm, theta: &Matrix, h: &Subgroup, tries: usize, seed: u64) -> Result<Option<(Matrix, Matrix)>> {
    let m = base.module();
    let f = m.field().clone();
    let res = m.restrict(h);
    let basis = hom_space(&res, &res);
    let mut cands: Vec<Matrix> = basis.clone();
    if h.is_trivial() {
        // rank-one idempotents onto basis lines
        let d = m.dim();
        for i in 0..d {
            let mut e = Matrix::zeros(&f, d, d);
            e.set(i, i, 1);
            cands.push(e);
        }
    }
    let mut r = rng(seed);
    for _ in 0..tries {
        let mut x = Matrix::zeros(&f, m.dim(), m.dim());
        for b in &basis {
            x.axpy(r.gen_range(0..f.order()) as Fe, b);
        }
        cands.push(x);
    }
    for a in cands {
        if let Some(phi) = strong_projectivity_isometry(base, theta, &a, h)? {
            return Ok(Some((a, phi)));
        }
    }
    Ok(None)
}

/// Whether an indecomposable V-projective module has vertex exactly V.
pub fn has_full_vertex(m: &ModuleRep, v: &Subgroup) -> Result<bool> {
    let g = m.group().clone();
    for k in maximal_subgroups(&g, v)? {
        if is_projective_local(m, &k).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The distinguished component of Ind_V^G Z with its certificates.
#[derive(Clone, Debug)]
pub struct ScottReport {
    pub module: ModuleRep,
    pub subspace: Subspace,
    /// (dimension, multiplicity, is a B_0^G-component) per vertex-V isomorphism class of Ind_V^G Z
    pub vertex_classes: Vec<(usize, usize, bool)>,
    pub multiplicity: usize,
    /// number of vertex-V classes of odd multiplicity
    pub odd_classes: usize,
    /// all other vertex-V classes have even multiplicity
    pub others_even: bool,
    /// Z is a B-component of Res_V M for this (theta, phi)
    pub restricted_witness: Option<(Matrix, Matrix)>,
    /// number of V-projective forms on Ind_V^G Z tested, all nondegenerate on a summand isomorphic to M
    pub forms_checked: usize,
    pub forms_nondegenerate: bool,
}

impl ScottReport {
    /// Multiplicity alone picks out M.
    pub fn unique_by_multiplicity(&self) -> bool {
        self.odd_classes == 1 && self.multiplicity % 2 == 1
    }
}

/// Vertex-V components of Ind_V^G Z; the distinguished one is the unique
/// class that is a B_0^G-component, for a V-form B_0 on Z.
pub fn scott_component(z: &ModuleRep, seed: u64) -> Result<ScottReport> {
    let g = z.group().clone();
    let v = z.acting().as_ref().clone();
    let b0 = forms::symmetric_form(z).ok_or_else(|| Error::Precondition("source must have symmetric type".into()))?;
    let zf = GForm::nondegenerate(z.clone(), b0)?;
    if !has_full_vertex(z, &v)? {
        return Err(Error::Precondition("Z does not have vertex V".into()));
    }
    let ind = induce_form(&zf, &g.whole());
    let comps = decompose(ind.module(), seed)?;
    let mut full: Vec<usize> = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        if has_full_vertex(&c.module, &v)? {
            full.push(i);
        }
    }
    let mods: Vec<&ModuleRep> = full.iter().map(|&i| &comps[i].module).collect();
    let cls = rep::iso_classes(&mods, seed)?;
    let ncls = cls.iter().max().map_or(0, |c| c + 1);
    let counts: Vec<usize> = (0..ncls).map(|c| cls.iter().filter(|&&x| x == c).count()).collect();
    let first: Vec<usize> = (0..ncls).map(|k| cls.iter().position(|&x| x == k).unwrap()).collect();
    let mut is_comp = Vec::with_capacity(ncls);
    for &i in &first {
        let l = mods[i];
        let ok = match base_form(l) {
            Ok(base) => component_of_induced(l, &zf, &base, &local_end(l)?).is_some(),
            Err(Error::Precondition(_)) => false,
            Err(e) => return Err(e),
        };
        is_comp.push(ok);
    }
    let chosen: Vec<usize> = (0..ncls).filter(|&k| is_comp[k]).collect();
    if chosen.len() != 1 {
        return Err(Error::Internal(format!("{} vertex-V classes are form components", chosen.len())));
    }
    let c = chosen[0];
    let comp = &comps[full[first[c]]];
    let vertex_classes: Vec<(usize, usize, bool)> = (0..ncls).map(|k| (mods[first[k]].dim(), counts[k], is_comp[k])).collect();
    let odd_classes = counts.iter().filter(|&&n| n % 2 == 1).count();
    let others_even = (0..ncls).all(|k| k == c || counts[k] % 2 == 0);
    // (c): a G-form on M with Z a nondegenerate component of Res_V M
    let mbase = base_form(&comp.module)?;
    let restricted_witness = source_component_form(&mbase, z)?;
    // (d): V-projective forms on Ind_V^G Z are nondegenerate on a summand isomorphic to M
    let local = local_end(&comp.module)?;
    let homs = hom_space(&comp.module, ind.module());
    let nondeg = |gram: &Matrix| nondegenerate_pullback(&homs, mbase.gram(), gram, &local).is_some();
    let mut forms_checked = 1;
    let mut forms_nondegenerate = nondeg(ind.gram());
    let pairs = sym_traces(ind.module(), &ind, &v)?;
    let mut r = rng(seed ^ 0x5c077);
    let f = z.field().clone();
    let n = ind.dim();
    for _ in 0..64 {
        if forms_checked >= 6 {
            break;
        }
        let mut theta = Matrix::zeros(&f, n, n);
        for (_, t) in &pairs {
            theta.axpy(r.gen_range(0..f.order()) as Fe, t);
        }
        if !theta.is_invertible() {
            continue;
        }
        forms_checked += 1;
        forms_nondegenerate &= nondeg(&theta.transpose().mul(ind.gram()));
    }
    Ok(ScottReport {
        module: comp.module.clone(),
        subspace: comp.subspace.clone(),
        vertex_classes,
        multiplicity: counts[c],
        odd_classes,
        others_even,
        restricted_witness,
        forms_checked,
        forms_nondegenerate,
    })
}

/// Everything known about the vertices of an indecomposable module.
#[derive(Clone, Debug)]
pub struct VertexReport {
    pub green: GreenVertex,
    pub symmetric_type: bool,
    pub symmetric_vertices: Vec<SymVertex>,
    pub case: Option<CaseReport>,
    pub principal_block: bool,
}

pub fn analyze(m: &ModuleRep, seed: u64) -> Result<VertexReport> {
    if !rep::is_indecomposable(m)? {
        return Err(Error::Decomposable);
    }
    let green = green_vertex(m, seed)?;
    let principal_block = crate::blocks::in_principal_block(m, seed)?;
    let base = match base_form(m) {
        Ok(b) => b,
        Err(Error::Precondition(_)) => {
            return Ok(VertexReport { green, symmetric_type: false, symmetric_vertices: Vec::new(), case: None, principal_block });
        }
        Err(e) => return Err(e),
    };
    let sym = symmetric_vertices(m, &base, &green)?;
    let case = classify_case(m, &base, &green, &sym)?;
    Ok(VertexReport { green, symmetric_type: true, symmetric_vertices: sym, case: Some(case), principal_block })
}

/// As [`analyze`], with a caller-supplied nondegenerate symmetric base form.
pub fn analyze_with_form(base: &GForm, seed: u64) -> Result<VertexReport> {
    let m = base.module();
    if !base.is_symmetric() || !base.is_nondegenerate() {
        return Err(Error::Precondition("base form must be symmetric and nondegenerate".into()));
    }
    if !rep::is_indecomposable(m)? {
        return Err(Error::Decomposable);
    }
    let green = green_vertex(m, seed)?;
    let principal_block = crate::blocks::in_principal_block(m, seed)?;
    let sym = symmetric_vertices(m, base, &green)?;
    let case = classify_case(m, base, &green, &sym)?;
    Ok(VertexReport { green, symmetric_type: true, symmetric_vertices: sym, case: Some(case), principal_block })
}

/// Adjoint of the base form of M, exposed for callers building sigma-fixed elements.
pub fn base_adjoint(m: &ModuleRep) -> Result<Adjoint> {
    base_form(m)?.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rep::{pims, simple_modules};
    use alloc::sync::Arc;
    use proptest::prelude::*;
    use rand::Rng;

    fn perm_group(n: usize, gens: &[Vec<usize>]) -> Arc<GroupTable> {
        Arc::new(GroupTable::from_permutations(n, gens).unwrap())
    }
    fn c2() -> Arc<GroupTable> {
        perm_group(2, &[vec![1, 0]])
    }
    fn s3() -> Arc<GroupTable> {
        perm_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }
    fn s4() -> Arc<GroupTable> {
        perm_group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
    }
    fn d12() -> Arc<GroupTable> {
        perm_group(6, &[vec![1, 2, 3, 4, 5, 0], vec![0, 5, 4, 3, 2, 1]])
    }
    fn gf4() -> Field {
        Field::new(2).unwrap()
    }
    fn trivial(g: &Arc<GroupTable>, f: &Field) -> ModuleRep {
        ModuleRep::trivial(g.clone(), Arc::new(g.whole()), f)
    }

    /// M is H-projective iff M is a summand of Ind_H^G Res_H M.
    fn brute_projective(m: &ModuleRep, h: &Subgroup) -> bool {
        let ind = m.restrict(h).induce(&m.group().whole());
        decompose(&ind, 3)
            .unwrap()
            .iter()
            .any(|c| c.module.dim() == m.dim() && module_iso(&c.module, m, 3).unwrap().is_some())
    }

    #[test]
    fn pims_are_projective_relative_to_one() {
        let g = s3();
        let f = gf4();
        for p in pims(&g, &f, 1).unwrap() {
            let c = is_projective(&p.module, &g.trivial()).unwrap().unwrap();
            assert!(c.trace.is_invertible());
            assert_eq!(p.module.rel_trace(&c.alpha, &g.trivial(), &g.whole()), c.trace);
        }
    }

    #[test]
    fn trivial_c2_not_projective_relative_to_one() {
        let g = c2();
        let f = Field::new(1).unwrap();
        let k = trivial(&g, &f);
        assert!(is_projective(&k, &g.trivial()).unwrap().is_none());
        assert!(is_projective(&k, &g.whole()).unwrap().is_some());
    }

    #[test]
    fn trace_projectivity_matches_summand_search() {
        let f = gf4();
        for g in [s3(), d12()] {
            let lat = g.two_lattice(LATTICE_BOUND).unwrap();
            let mut mods: Vec<ModuleRep> = simple_modules(&g, &f, 1).unwrap();
            mods.extend(pims(&g, &f, 1).unwrap().into_iter().map(|p| p.module));
            for m in &mods {
                for c in &lat.classes {
                    let t = is_projective(m, &c.rep).unwrap().is_some();
                    assert_eq!(t, brute_projective(m, &c.rep), "order {} dim {}", c.rep.order(), m.dim());
                }
            }
        }
    }

    #[test]
    fn trivial_module_has_sylow_vertex() {
        let f = gf4();
        for g in [s3(), d12(), s4()] {
            let k = trivial(&g, &f);
            let v = green_vertex(&k, 1).unwrap();
            assert_eq!(v.vertex.order(), g.two_part());
            assert_eq!(v.sources.len(), 1);
            assert_eq!(v.sources[0].module.dim(), 1);
            let base = base_form(&k).unwrap();
            let sym = symmetric_vertices(&k, &base, &v).unwrap();
            assert_eq!(sym.len(), 1);
            assert_eq!(sym[0].subgroup.order(), g.two_part());
            let case = classify_case(&k, &base, &v, &sym).unwrap();
            assert_eq!(case.case, Case::I);
            assert!(case.criteria_agree && case.vertex_consistent && case.index_bound);
        }
    }

    /// Ind of the nontrivial irreducible of an S3 inside D12.
    fn d12_pim() -> ModuleRep {
        let g = d12();
        let f = gf4();
        // rotation by 2 and a reflection generate an S3
        let r2 = (0..g.order() as u32).find(|&x| g.elem_order(x) == 3).unwrap();
        let invs = g.involutions();
        let h = invs.iter().map(|&s| g.closure(&[r2, s])).find(|h| h.order() == 6).unwrap();
        let hg = Arc::new(h.clone());
        // 2-dim irreducible of the S3 inside the permutation module on the cosets of an involution
        let s = invs.iter().copied().find(|&x| h.contains(x)).unwrap();
        let cyc = g.closure(&[s]);
        let perm = ModuleRep::trivial(g.clone(), Arc::new(cyc), &f).induce(&h);
        let comps = decompose(&perm, 1).unwrap();
        let two = comps.into_iter().find(|c| c.module.dim() == 2).unwrap().module;
        assert_eq!(two.acting().as_ref(), hg.as_ref());
        let p = two.induce(&g.whole());
        assert!(rep::is_indecomposable(&p).unwrap());
        p
    }

    #[test]
    fn d12_pim_has_two_symmetric_vertex_classes() {
        let p = d12_pim();
        let g = p.group().clone();
        assert_eq!(p.dim(), 4);
        let v = green_vertex(&p, 1).unwrap();
        assert_eq!(v.vertex.order(), 1);
        let base = base_form(&p).unwrap();
        let sym = symmetric_vertices(&p, &base, &v).unwrap();
        assert_eq!(sym.len(), 2);
        assert!(sym.iter().all(|s| s.subgroup.order() == 2));
        assert!(g.subgroup_conjugate(&sym[0].subgroup, &sym[1].subgroup).is_none());
        for (a, b) in [(0, 1), (1, 0)] {
            let theta = &sym[a].cert.theta;
            assert!(form_is_h_projective(&base, theta, &sym[a].subgroup).unwrap().is_some());
            assert!(form_is_h_projective(&base, theta, &sym[b].subgroup).unwrap().is_none());
        }
        let case = classify_case(&p, &base, &v, &sym).unwrap();
        assert_eq!(case.case, Case::II);
        assert!(case.criteria_agree && case.vertex_consistent && case.index_bound);
    }

    #[test]
    fn sym_projectivity_does_not_depend_on_base_form() {
        let p = d12_pim();
        let g = p.group().clone();
        let lat = g.two_lattice(LATTICE_BOUND).unwrap();
        let bases: Vec<GForm> = forms::symmetric_nondegenerate_basis(&p)
            .into_iter()
            .map(|b| GForm::nondegenerate(p.clone(), b).unwrap())
            .collect();
        assert!(!bases.is_empty());
        for c in &lat.classes {
            let r: Vec<bool> = bases.iter().map(|b| is_sym_projective(&p, b, &c.rep).unwrap().is_some()).collect();
            assert!(r.iter().all(|&x| x == r[0]));
        }
    }

    #[test]
    fn element_forms_on_group_algebra() {
        let g = s3();
        let f = gf4();
        let b1 = forms::element_form(&g, &f, 0);
        for t in g.involutions() {
            let bt = forms::element_form(&g, &f, t);
            let theta = bt.gram().transpose();
            let tg = g.closure(&[t]);
            let c = form_is_h_projective(&b1, &theta, &tg).unwrap().unwrap();
            assert!(is_isometry(&bt, &c.induced, &c.isometry));
            assert!(form_is_h_projective(&b1, &theta, &g.trivial()).unwrap().is_none());
        }
        let one = Matrix::identity(&f, g.order());
        assert!(form_is_h_projective(&b1, &one, &g.trivial()).unwrap().is_some());
    }

    #[test]
    fn strong_projectivity_on_group_algebra() {
        let g = s3();
        let f = gf4();
        let b1 = forms::element_form(&g, &f, 0);
        let one = Matrix::identity(&f, g.order());
        let mut e11 = Matrix::zeros(&f, g.order(), g.order());
        e11.set(0, 0, 1);
        assert!(strong_projectivity_isometry(&b1, &one, &e11, &g.trivial()).unwrap().is_some());
        let found = find_strong_projectivity(&b1, &one, &g.trivial(), 4, 2).unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn projective_irreducible_of_s3_is_case_two() {
        let g = s3();
        let f = gf4();
        let m = simple_modules(&g, &f, 1).unwrap().into_iter().find(|m| m.dim() == 2).unwrap();
        let r = analyze(&m, 1).unwrap();
        assert_eq!(r.green.vertex.order(), 1);
        assert_eq!(r.symmetric_vertices.len(), 1);
        assert_eq!(r.symmetric_vertices[0].subgroup.order(), 2);
        assert_eq!(r.case.as_ref().unwrap().case, Case::II);
        assert!(!r.principal_block);
    }

    #[test]
    fn sylow_form_projective_exactly_above_sylow() {
        let g = s4();
        let f = gf4();
        let k = trivial(&g, &f);
        let base = base_form(&k).unwrap();
        let one = Matrix::identity(&f, 1);
        let rows = verify_t_leq_h(&base, &one, &g.sylow2()).unwrap();
        assert!(rows.iter().all(|(_, a, b)| a == b));
        assert!(rows.iter().any(|(_, a, _)| *a));
    }

    #[test]
    fn scott_module_for_sylow_of_s3() {
        let g = s3();
        let f = gf4();
        let v = g.sylow2();
        let z = ModuleRep::trivial(g.clone(), Arc::new(v), &f);
        let s = scott_component(&z, 1).unwrap();
        assert_eq!(s.module.dim(), 1);
        assert_eq!(s.multiplicity, 1);
        assert!(s.others_even && s.forms_nondegenerate && s.unique_by_multiplicity());
        assert!(s.restricted_witness.is_some());
    }

    #[test]
    fn odd_inertia_leaves_several_multiplicity_one_classes() {
        // A4 over V4: Ind k is the three linear characters of C3, each once
        let g = perm_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
        let f = gf4();
        let v = g.sylow2();
        let z = ModuleRep::trivial(g.clone(), Arc::new(v), &f);
        let s = scott_component(&z, 1).unwrap();
        assert_eq!(s.vertex_classes.len(), 3);
        assert_eq!(s.odd_classes, 3);
        assert!(!s.unique_by_multiplicity());
        assert_eq!(s.vertex_classes.iter().filter(|c| c.2).count(), 1);
        let triv = trivial(&g, &f);
        assert!(module_iso(&s.module, &triv, 1).unwrap().is_some());
        assert!(s.forms_nondegenerate && s.restricted_witness.is_some());
    }

    #[test]
    fn source_component_of_trivial_module() {
        let g = d12();
        let f = gf4();
        let k = trivial(&g, &f);
        let base = base_form(&k).unwrap();
        let z = ModuleRep::trivial(g.clone(), Arc::new(g.sylow2()), &f);
        let (theta, phi) = source_component_form(&base, &z).unwrap().unwrap();
        let gram = theta.transpose().mul(base.gram());
        assert!(phi.transpose().mul(&gram).mul(&phi).is_invertible());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn relative_trace_is_transitive(seed in any::<u64>()) {
            let g = s4();
            let f = gf4();
            let m = pims(&g, &f, 1).unwrap().into_iter().last().unwrap().module;
            let lat = g.two_lattice(LATTICE_BOUND).unwrap();
            let mut r = rng(seed);
            let k = &lat.subgroups[r.gen_range(0..lat.subgroups.len())];
            let subs = g.all_subgroups_of(k, 4096).unwrap();
            let h = &subs[r.gen_range(0..subs.len())];
            let res = m.restrict(h);
            let basis = hom_space(&res, &res);
            let mut a = Matrix::zeros(&f, m.dim(), m.dim());
            for b in &basis {
                a.axpy(r.gen_range(0..4) as Fe, b);
            }
            let whole = g.whole();
            let two = rel_trace(&m, &rel_trace(&m, &a, h, k).unwrap(), k, &whole).unwrap();
            prop_assert_eq!(two, rel_trace(&m, &a, h, &whole).unwrap());
        }

        #[test]
        fn higman_certificate_traces_to_unit(seed in 0u64..64) {
            let g = d12();
            let p = d12_pim();
            let lat = g.two_lattice(LATTICE_BOUND).unwrap();
            let c = &lat.classes[(seed as usize) % lat.classes.len()];
            if let Some(cert) = is_projective(&p, &c.rep).unwrap() {
                prop_assert!(p.rel_trace(&cert.alpha, &c.rep, &g.whole()).is_invertible());
            }
        }
    }
}
