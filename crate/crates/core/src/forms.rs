//! Invariant bilinear forms: Gram matrices, adjoints, orthogonal
//! complements and projections, pairings, induction and Mackey pieces,
//! orthogonal decomposition.
//!
//! Conventions: B(x, y) = x^T G y, B_f(m1, m2) = B(f m1, m2) has Gram f^T G,
//! and the adjoint satisfies B(m1, f m2) = B(sigma(f) m1, m2).

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{self, MatAlgebra};
use crate::field::{Fe, Field};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::{Matrix, Subspace};
use crate::rep::{self, coord_matrix, decompose, hom_space, inclusion_matrix, module_iso, ModuleRep};
use crate::{rng, Error, Result};

/// An invariant bilinear form on a module.
#[derive(Clone, Debug)]
pub struct GForm {
    module: ModuleRep,
    gram: Matrix,
    symmetric: bool,
    symplectic: bool,
    nondegenerate: bool,
}

impl GForm {
    /// Checks shape and invariance under the acting group.
    pub fn new(module: ModuleRep, gram: Matrix) -> Result<GForm> {
        let d = module.dim();
        if gram.rows != d || gram.cols != d {
            return Err(Error::Dim(format!("gram is {}x{}, module has dimension {d}", gram.rows, gram.cols)));
        }
        if gram.field() != module.field() {
            return Err(Error::Field("gram over a different field".into()));
        }
        let invariant = module.gen_matrices().iter().all(|r| r.transpose().mul(&gram).mul(r) == gram);
        if !invariant {
            return Err(Error::NotInvariant);
        }
        Ok(GForm::unchecked(module, gram))
    }

    /// As `new`, but also rejects degenerate forms.
    pub fn nondegenerate(module: ModuleRep, gram: Matrix) -> Result<GForm> {
        let b = GForm::new(module, gram)?;
        if !b.nondegenerate {
            return Err(Error::Degenerate);
        }
        Ok(b)
    }

    pub(crate) fn unchecked(module: ModuleRep, gram: Matrix) -> GForm {
        let symmetric = gram == gram.transpose();
        let symplectic = symmetric && (0..gram.rows).all(|i| gram.get(i, i) == 0);
        let nondegenerate = gram.is_invertible();
        GForm { module, gram, symmetric, symplectic, nondegenerate }
    }

    pub fn module(&self) -> &ModuleRep {
        &self.module
    }
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }
    pub fn field(&self) -> &Field {
        self.module.field()
    }
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
    pub fn is_symplectic(&self) -> bool {
        self.symplectic
    }
    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn eval(&self, x: &[Fe], y: &[Fe]) -> Fe {
        self.field().dot(x, &self.gram.mul_vec(y))
    }

    /// B_f for f in End(M): Gram f^T G.
    pub fn twisted(&self, f: &Matrix) -> Result<GForm> {
        if !self.module.is_hom(&self.module, f) {
            return Err(Error::Precondition("twisting map is not an endomorphism".into()));
        }
        Ok(GForm::unchecked(self.module.clone(), f.transpose().mul(&self.gram)))
    }

    pub fn scaled(&self, c: Fe) -> GForm {
        GForm::unchecked(self.module.clone(), self.gram.scaled(c))
    }

    /// Same form, restricted group.
    pub fn restrict_group(&self, h: &Subgroup) -> GForm {
        GForm::unchecked(self.module.restrict(h), self.gram.clone())
    }

    /// ^g B on the conjugate module (same Gram).
    pub fn conjugate(&self, g: u32) -> GForm {
        GForm::unchecked(self.module.conjugate(g), self.gram.clone())
    }

    /// Restriction to a submodule, on its RREF basis.
    pub fn restrict_to(&self, w: &Subspace) -> Result<GForm> {
        let module = self.module.submodule(w)?;
        Ok(GForm::unchecked(module, restricted_gram(&self.gram, w)))
    }

    /// Orthogonal sum of forms on modules for the same acting group.
    pub fn orthogonal_sum(parts: &[&GForm]) -> GForm {
        let mods: Vec<&ModuleRep> = parts.iter().map(|p| &p.module).collect();
        let module = ModuleRep::direct_sum(&mods);
        let grams: Vec<Matrix> = parts.iter().map(|p| p.gram.clone()).collect();
        GForm::unchecked(module, Matrix::block_diag(parts[0].field(), &grams))
    }

    pub fn adjoint(&self) -> Result<Adjoint> {
        Adjoint::new(self)
    }
}

/// Gram matrix of B on the RREF basis rows of w.
pub fn restricted_gram(gram: &Matrix, w: &Subspace) -> Matrix {
    let u = w.basis();
    u.mul(gram).mul(&u.transpose())
}

/// Whether phi: from -> to is a module map with phi^T G_to phi = G_from.
pub fn is_isometry(from: &GForm, to: &GForm, phi: &Matrix) -> bool {
    phi.rows == to.dim()
        && phi.cols == from.dim()
        && from.module.is_hom(&to.module, phi)
        && phi.transpose().mul(&to.gram).mul(phi) == from.gram
}

/// The adjoint involution of a nondegenerate form.
#[derive(Clone, Debug)]
pub struct Adjoint {
    gram: Matrix,
    gram_inv_t: Matrix,
}

impl Adjoint {
    pub fn new(b: &GForm) -> Result<Adjoint> {
        let inv = b.gram.inverse().ok_or(Error::Degenerate)?;
        Ok(Adjoint { gram: b.gram.clone(), gram_inv_t: inv.transpose() })
    }

    /// sigma(f) = G^-T f^T G^T; equal to G^-1 f^T G for symmetric G.
    pub fn apply(&self, f: &Matrix) -> Matrix {
        self.gram_inv_t.mul(&f.transpose()).mul(&self.gram.transpose())
    }

    pub fn apply_flat(&self, d: usize, f: &[Fe]) -> Vec<Fe> {
        self.apply(&Matrix::from_vec(self.gram.field(), d, d, f.to_vec())).data
    }

    /// Basis of the sigma-fixed part of span(basis), assumed sigma-stable.
    pub fn fixed_subspace(&self, basis: &[Matrix]) -> Vec<Matrix> {
        if basis.is_empty() {
            return Vec::new();
        }
        let f = self.gram.field();
        let (r, c) = (basis[0].rows, basis[0].cols);
        let diffs: Vec<Vec<Fe>> = basis.iter().map(|b| self.apply(b).add(b).data).collect();
        let sys = Matrix::from_cols(f, r * c, &diffs);
        combos(f, basis, &sys.kernel())
    }
}

fn combos(f: &Field, basis: &[Matrix], coeffs: &[Vec<Fe>]) -> Vec<Matrix> {
    let (r, c) = (basis[0].rows, basis[0].cols);
    let flat: Vec<Vec<Fe>> = coeffs
        .iter()
        .map(|x| {
            let mut m = Matrix::zeros(f, r, c);
            for (ci, b) in x.iter().zip(basis) {
                if *ci != 0 {
                    m.axpy(*ci, b);
                }
            }
            m.data
        })
        .collect();
    Subspace::from_rows(f, r * c, &flat).basis_vecs().into_iter().map(|v| Matrix::from_vec(f, r, c, v)).collect()
}

/// Invariant forms on a module, with the symmetric and symplectic slices.
#[derive(Clone, Debug)]
pub struct InvariantForms {
    pub all: Vec<Matrix>,
    pub symmetric: Vec<Matrix>,
    pub symplectic: Vec<Matrix>,
}

/// All invariant Gram matrices: the solutions of rho(g)^T G rho(g) = G,
/// that is Hom(M, M*).
pub fn invariant_forms(m: &ModuleRep) -> InvariantForms {
    let f = m.field().clone();
    let d = m.dim();
    let all = hom_space(m, &m.dual());
    if all.is_empty() {
        return InvariantForms { all, symmetric: Vec::new(), symplectic: Vec::new() };
    }
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let sym_rows = |with_diag: bool| -> Matrix {
        let cols: Vec<Vec<Fe>> = all
            .iter()
            .map(|g| {
                let mut v: Vec<Fe> = pairs.iter().map(|&(i, j)| g.get(i, j) ^ g.get(j, i)).collect();
                if with_diag {
                    v.extend((0..d).map(|i| g.get(i, i)));
                }
                v
            })
            .collect();
        let n = pairs.len() + if with_diag { d } else { 0 };
        Matrix::from_cols(&f, n, &cols)
    };
    let symmetric = if pairs.is_empty() { all.clone() } else { combos(&f, &all, &sym_rows(false).kernel()) };
    let symplectic = combos(&f, &all, &sym_rows(true).kernel());
    InvariantForms { all, symmetric, symplectic }
}

/// L^perp = { m : B(l, m) = 0 for l in L }.
pub fn orth_complement(b: &GForm, l: &Subspace) -> Subspace {
    let d = b.dim();
    if l.dim() == 0 {
        return Subspace::full(b.field(), d);
    }
    let rows = l.basis().mul(&b.gram);
    Subspace::from_rows(b.field(), d, &rows.kernel())
}

pub fn is_nondegenerate_on(b: &GForm, l: &Subspace) -> bool {
    restricted_gram(&b.gram, l).is_invertible()
}

/// The idempotent with image L and kernel L^perp: U^T (U G U^T)^-1 U G.
pub fn orth_projection(b: &GForm, l: &Subspace) -> Result<Matrix> {
    let u = l.basis();
    let inner = restricted_gram(&b.gram, l).inverse().ok_or(Error::Degenerate)?;
    Ok(u.transpose().mul(&inner).mul(u).mul(&b.gram))
}

/// Self-adjoint idempotent lifting in a subalgebra of End(M).
pub fn lift_selfadjoint_idempotent(
    alg: &MatAlgebra,
    adj: &Adjoint,
    ideal: &Subspace,
    a: &Matrix,
    seed: u64,
) -> Result<Matrix> {
    let d = alg.size();
    let sigma = |x: &[Fe]| adj.apply_flat(d, x);
    let e = algebra::lift_selfadjoint_idempotent(alg, &sigma, ideal, &a.data, &mut rng(seed))?;
    Ok(alg.to_matrix(&e))
}

/// The pairing theta M x sigma(theta) M -> k, (theta m1, sigma(theta) m2) -> B(theta m1, m2).
#[derive(Clone, Debug)]
pub struct PairingCert {
    pub left: Subspace,
    pub right: Subspace,
    /// P[i][j] = pairing of the i-th basis vector of `left` with the j-th of `right`
    pub matrix: Matrix,
    pub perfect: bool,
    /// right module -> dual of the left module, when the pairing is perfect and equivariant
    pub iso: Option<Matrix>,
}

pub fn perfect_pairing(b: &GForm, theta: &Matrix) -> Result<PairingCert> {
    let adj = b.adjoint()?;
    let f = b.field().clone();
    let st = adj.apply(theta);
    let left = theta.column_space();
    let right = st.column_space();
    let k = left.dim();
    if right.dim() != k {
        return Err(Error::Internal("theta and its adjoint have different ranks".into()));
    }
    // preimages w_j with sigma(theta) w_j = v_j
    let mut p = Matrix::zeros(&f, k, k);
    for j in 0..k {
        let w = match st.solve(right.basis().row(j)) {
            crate::linalg::Solve::Solution(w) => w,
            crate::linalg::Solve::Inconsistent(_) => return Err(Error::Internal("basis vector outside image".into())),
        };
        for i in 0..k {
            p.set(i, j, b.eval(left.basis().row(i), &w));
        }
    }
    let perfect = p.is_invertible();
    let iso = if perfect {
        let lm = b.module.submodule(&left)?;
        let rm = b.module.submodule(&right)?;
        rm.is_hom(&lm.dual(), &p).then(|| p.clone())
    } else {
        None
    };
    Ok(PairingCert { left, right, matrix: p, perfect, iso })
}

/// Extends a form on the summand eM to M by B'(m1, m2) = Bhat(e m1, e m2).
/// Returns the extension and theta with B' = B_theta.
pub fn extend_form_from_summand(b: &GForm, e: &Matrix, bhat: &Matrix) -> Result<(GForm, Matrix)> {
    let em = e.column_space();
    if bhat.rows != em.dim() || bhat.cols != em.dim() {
        return Err(Error::Dim("form on summand has the wrong size".into()));
    }
    let proj = coord_matrix(&em).mul(e);
    let gram = proj.transpose().mul(bhat).mul(&proj);
    let inv_t = b.gram.inverse().ok_or(Error::Degenerate)?.transpose();
    let theta = inv_t.mul(&gram.transpose());
    let ext = GForm::new(b.module.clone(), gram)?;
    Ok((ext, theta))
}

/// Induced form on Ind_H^K L: block-diagonal with the form of L in each
/// transversal block.
pub fn induce_form(l: &GForm, k: &Subgroup) -> GForm {
    let module = l.module.induce(k);
    let r = module.dim() / l.dim().max(1);
    let blocks: Vec<Matrix> = (0..r).map(|_| l.gram.clone()).collect();
    GForm::unchecked(module, Matrix::block_diag(l.field(), &blocks))
}

/// A Mackey piece of Res_K Ind_H^G (L, B_L).
#[derive(Clone, Debug)]
pub struct MackeyPiece {
    pub rep: u32,
    /// K intersected with rep H rep^-1
    pub subgroup: Subgroup,
    pub form: GForm,
    /// isometric embedding into Res_K Ind_H^G L
    pub witness: Matrix,
}

/// Orthogonal decomposition of Res_K Ind_H^G (L, B_L) indexed by K\G/H.
pub fn mackey_decompose(l: &GForm, k: &Subgroup) -> Vec<MackeyPiece> {
    let g = l.module.group().clone();
    let h = l.module.acting().as_ref().clone();
    let whole = g.whole();
    let t = g.left_transversal(&whole, &h);
    let d = l.dim();
    let total = t.len() * d;
    let f = l.field().clone();
    let mut out = Vec::new();
    for dc in g.double_cosets(k, &h) {
        let x = dc.rep;
        let conj_h = g.conjugate(&h, x);
        let s = g.intersection(k, &conj_h);
        let piece_mod = l.module.conjugate(x).restrict(&s).induce(k);
        let ts = g.left_transversal(k, &s);
        let mut w = Matrix::zeros(&f, total, ts.len() * d);
        for (j, &ij) in ts.reps.iter().enumerate() {
            let y = g.mul(ij, x);
            let c = t.coset_of[y as usize] as usize;
            let hh = g.mul(g.inv(t.reps[c]), y);
            w.set_block(c * d, j * d, l.module.act(hh));
        }
        let blocks: Vec<Matrix> = (0..ts.len()).map(|_| l.gram.clone()).collect();
        let form = GForm::unchecked(piece_mod, Matrix::block_diag(&f, &blocks));
        out.push(MackeyPiece { rep: x, subgroup: s, form, witness: w });
    }
    out
}

/// Checks the pieces against Res_K of the induced form: each witness is an
/// isometric K-map and together they give an orthogonal base change.
pub fn verify_mackey(l: &GForm, k: &Subgroup, pieces: &[MackeyPiece]) -> bool {
    let ind = induce_form(l, &l.module.group().whole()).restrict_group(k);
    let f = l.field();
    let mut cols: Option<Matrix> = None;
    for p in pieces {
        if !is_isometry(&p.form, &ind, &p.witness) {
            return false;
        }
        cols = Some(match cols {
            None => p.witness.clone(),
            Some(c) => c.hstack(&p.witness),
        });
    }
    let Some(w) = cols else { return ind.dim() == 0 };
    let grams: Vec<Matrix> = pieces.iter().map(|p| p.form.gram.clone()).collect();
    w.is_invertible() && w.transpose().mul(&ind.gram).mul(&w) == Matrix::block_diag(f, &grams)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    /// B nondegenerate on an indecomposable summand
    Indecomposable,
    /// B nondegenerate on M_i + M_j with M_j dual to M_i
    DualPair,
}

#[derive(Clone, Debug)]
pub struct OrthComponent {
    pub subspace: Subspace,
    pub kind: ComponentKind,
    /// the indecomposable summands making up the component
    pub halves: Vec<Subspace>,
    pub form: GForm,
}

/// Greedy orthogonal decomposition into nondegenerate pieces.
pub fn orth_decompose(b: &GForm, seed: u64) -> Result<Vec<OrthComponent>> {
    if !b.symmetric || !b.nondegenerate {
        return Err(Error::Precondition("orthogonal decomposition needs a nondegenerate symmetric form".into()));
    }
    let mut out = Vec::new();
    let emb = Matrix::identity(b.field(), b.dim());
    orth_step(b, b, &emb, seed, &mut out)?;
    Ok(out)
}

fn ambient(emb: &Matrix, w: &Subspace) -> Subspace {
    Subspace::from_matrix(&emb.mul(&w.basis().transpose()).transpose())
}

fn orth_step(top: &GForm, piece: &GForm, emb: &Matrix, seed: u64, out: &mut Vec<OrthComponent>) -> Result<()> {
    if piece.dim() == 0 {
        return Ok(());
    }
    let comps = moved_components(piece.module(), decompose(piece.module(), seed)?, seed);
    let c1 = &comps[0];
    let (chosen, kind, halves) = if is_nondegenerate_on(piece, &c1.subspace) {
        (c1.subspace.clone(), ComponentKind::Indecomposable, vec![c1.subspace.clone()])
    } else {
        let dual = c1.module.dual();
        let mut order: Vec<(usize, usize)> =
            (1..comps.len()).map(|j| (hom_space(&comps[j].module, &dual).len(), j)).collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut found = None;
        for &(_, j) in &order {
            let sum = c1.subspace.sum(&comps[j].subspace);
            if is_nondegenerate_on(piece, &sum) {
                if module_iso(&comps[j].module, &dual, seed)?.is_none() {
                    return Err(Error::Internal("partner summand is not dual".into()));
                }
                found = Some((sum, vec![c1.subspace.clone(), comps[j].subspace.clone()]));
                break;
            }
        }
        let (sum, halves) = found.ok_or_else(|| Error::Internal("no partner summand found".into()))?;
        (sum, ComponentKind::DualPair, halves)
    };
    let form = top.restrict_to(&ambient(emb, &chosen))?;
    out.push(OrthComponent {
        subspace: ambient(emb, &chosen),
        kind,
        halves: halves.iter().map(|h| ambient(emb, h)).collect(),
        form,
    });
    let rest = orth_complement(piece, &chosen);
    let rest_form = piece.restrict_to(&rest)?;
    let rest_emb = emb.mul(&inclusion_matrix(&rest));
    orth_step(top, &rest_form, &rest_emb, seed.wrapping_mul(6364136223846793005).wrapping_add(1), out)
}

/// The components moved by a random automorphism of M, so that the summand
/// chosen first depends on the seed.
fn moved_components(m: &ModuleRep, comps: Vec<rep::Component>, seed: u64) -> Vec<rep::Component> {
    use rand::Rng;
    let f = m.field().clone();
    let basis = rep::end_algebra(m);
    let mut r = rng(seed ^ 0x0e7d);
    for _ in 0..32 {
        let mut u = Matrix::zeros(&f, m.dim(), m.dim());
        for b in &basis {
            u.axpy(r.gen_range(0..f.order()) as Fe, b);
        }
        let Some(ui) = u.inverse() else { continue };
        return comps
            .into_iter()
            .map(|c| {
                let subspace = c.subspace.image(&u);
                let module = m.submodule_unchecked(&subspace);
                rep::Component { subspace, idempotent: u.mul(&c.idempotent).mul(&ui), module }
            })
            .collect();
    }
    comps
}

/// Checks an orthogonal decomposition: pairwise orthogonal, spanning,
/// nondegenerate pieces, and dual halves for pairs (via a perfect pairing).
pub fn verify_orth_decomposition(b: &GForm, comps: &[OrthComponent], seed: u64) -> Result<bool> {
    let f = b.field();
    let mut total = Subspace::zero(f, b.dim());
    for (i, c) in comps.iter().enumerate() {
        if !b.module.is_submodule(&c.subspace) || !is_nondegenerate_on(b, &c.subspace) {
            return Ok(false);
        }
        for d in &comps[i + 1..] {
            if !restricted_cross(b, &c.subspace, &d.subspace).is_zero() {
                return Ok(false);
            }
        }
        total = total.sum(&c.subspace);
        if c.kind == ComponentKind::DualPair {
            let [h1, h2] = &c.halves[..] else { return Ok(false) };
            // projection onto the first half along the second, inside the pair
            let pm = b.module.submodule(&c.subspace)?;
            let pf = GForm::unchecked(pm.clone(), restricted_gram(&b.gram, &c.subspace));
            let co = |h: &Subspace| -> Subspace {
                let rows: Vec<Vec<Fe>> = h.basis_vecs().iter().map(|v| c.subspace.coords_unchecked(v)).collect();
                Subspace::from_rows(f, c.subspace.dim(), &rows)
            };
            let (a, bb) = (co(h1), co(h2));
            let theta = projection_along(&a, &bb);
            let cert = perfect_pairing(&pf, &theta)?;
            if !cert.perfect || cert.iso.is_none() {
                return Ok(false);
            }
            let m1 = pm.submodule(&a)?;
            let m2 = pm.submodule(&bb)?;
            if module_iso(&m2, &m1.dual(), seed)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(total.dim() == b.dim())
}

fn restricted_cross(b: &GForm, v: &Subspace, w: &Subspace) -> Matrix {
    v.basis().mul(&b.gram).mul(&w.basis().transpose())
}

/// Idempotent with image a and kernel c, for complementary subspaces.
pub fn projection_along(a: &Subspace, c: &Subspace) -> Matrix {
    let basis = a.basis().vstack(c.basis()).transpose();
    let inv = basis.inverse().expect("complementary subspaces");
    let k = a.dim();
    let n = a.ambient();
    let mut keep = Matrix::zeros(a.field(), n, n);
    for i in 0..k {
        keep.set(i, i, 1);
    }
    basis.mul(&keep).mul(&inv)
}

/// Given an isometry alpha of (M, B_M) into the orthogonal sum of the parts,
/// finds j such that the j-th block alpha_j pulls B_j back to a nondegenerate
/// form B_gamma on M. Returns (j, alpha_j, gamma).
pub fn pick_nondegenerate_component(m: &GForm, parts: &[&GForm], alpha: &Matrix) -> Result<(usize, Matrix, Matrix)> {
    let sum = GForm::orthogonal_sum(parts);
    if !is_isometry(m, &sum, alpha) {
        return Err(Error::Precondition("not an isometry into the orthogonal sum".into()));
    }
    let ginv = m.gram.inverse().ok_or(Error::Degenerate)?;
    let mut row = 0;
    for (j, p) in parts.iter().enumerate() {
        let aj = alpha.submatrix(row, 0, p.dim(), m.dim());
        row += p.dim();
        let x = aj.transpose().mul(&p.gram).mul(&aj);
        if x.is_invertible() {
            let gamma = ginv.transpose().mul(&x.transpose());
            return Ok((j, aj, gamma));
        }
    }
    Err(Error::Internal("no nondegenerate component".into()))
}

/// Gram of B_a on the regular module: entry (g, h) is the coefficient of h in g a.
pub fn regular_form(group: &Arc<GroupTable>, field: &Field, a: &[Fe]) -> GForm {
    let n = group.order();
    let mut gram = Matrix::zeros(field, n, n);
    for g in 0..n as u32 {
        for (x, &c) in a.iter().enumerate() {
            if c != 0 {
                gram.set(g as usize, group.mul(g, x as u32) as usize, c);
            }
        }
    }
    GForm::unchecked(ModuleRep::regular(group.clone(), field), gram)
}

/// B_t on kG for an element t.
pub fn element_form(group: &Arc<GroupTable>, field: &Field, t: u32) -> GForm {
    let mut a = vec![0; group.order()];
    a[t as usize] = 1;
    regular_form(group, field, &a)
}

/// Some g with B_t(g, s g) != 0, i.e. g t = s g. Exists iff s and t are conjugate.
pub fn involution_component_test(group: &GroupTable, s: u32, t: u32) -> Option<u32> {
    (0..group.order() as u32).find(|&g| group.mul(g, t) == group.mul(s, g))
}

/// (M, c B) is isometric to (M, B) via sqrt(c) times the identity.
pub fn scalar_isometry(b: &GForm, c: Fe) -> (GForm, Matrix) {
    let f = b.field();
    let r = f.sqrt(c);
    (b.scaled(c), Matrix::identity(f, b.dim()).scaled(r))
}

/// Symmetric type: some nondegenerate symmetric invariant form. Exact for
/// indecomposable modules, where the degenerate forms make up a subspace.
pub fn symmetric_form(m: &ModuleRep) -> Option<Matrix> {
    let inv = invariant_forms(m);
    inv.symmetric.iter().find(|g| g.is_invertible()).cloned()
}

/// Nondegenerate symmetric forms in the symmetric slice, first basis vector first.
pub fn symmetric_nondegenerate_basis(m: &ModuleRep) -> Vec<Matrix> {
    invariant_forms(m).symmetric.into_iter().filter(|g| g.is_invertible()).collect()
}

pub use rep::paired_module;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FdAlgebra;
    use crate::rep::simple_modules;
    use proptest::prelude::*;
    use rand::Rng;

    fn perm_group(n: usize, gens: &[Vec<usize>]) -> Arc<GroupTable> {
        Arc::new(GroupTable::from_permutations(n, gens).unwrap())
    }
    fn s3() -> Arc<GroupTable> {
        perm_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }
    fn d12() -> Arc<GroupTable> {
        perm_group(6, &[vec![1, 2, 3, 4, 5, 0], vec![0, 5, 4, 3, 2, 1]])
    }
    fn v4() -> Arc<GroupTable> {
        perm_group(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
    }
    fn gf4() -> Field {
        Field::new(2).unwrap()
    }

    /// 2-dim irreducible of S3 with its symplectic form.
    fn s3_simple() -> GForm {
        let g = s3();
        let f = gf4();
        let sims = simple_modules(&g, &f, 1).unwrap();
        let m = sims.iter().find(|m| m.dim() == 2).unwrap().clone();
        let inv = invariant_forms(&m);
        GForm::nondegenerate(m, inv.symmetric[0].clone()).unwrap()
    }

    #[test]
    fn fong_slice_for_s3() {
        let b = s3_simple();
        let inv = invariant_forms(b.module());
        assert_eq!(inv.symmetric.len(), 1);
        assert_eq!(inv.symplectic.len(), 1);
        assert!(b.is_symplectic());
    }

    #[test]
    fn non_selfdual_has_no_forms() {
        // C3 acting on GF(4) by a primitive cube root of unity
        let g = perm_group(3, &[vec![1, 2, 0]]);
        let f = gf4();
        let m = ModuleRep::new(g.clone(), Arc::new(g.whole()), f.clone(), vec![Matrix::from_vec(&f, 1, 1, vec![2])]).unwrap();
        assert!(invariant_forms(&m).all.is_empty());
    }

    #[test]
    fn forms_match_endomorphism_images() {
        let b = s3_simple();
        let (p, _) = paired_module(b.module());
        let m = ModuleRep::direct_sum(&[b.module(), &p]);
        let base = GForm::orthogonal_sum(&[&b, &GForm::new(p.clone(), paired_module(b.module()).1).unwrap()]);
        let inv = invariant_forms(&m);
        let ends = rep::end_algebra(&m);
        let from_ends: Vec<Vec<Fe>> = ends.iter().map(|e| base.gram().mul(e).data).collect();
        let d = m.dim();
        let a = Subspace::from_rows(b.field(), d * d, &inv.all.iter().map(|x| x.data.clone()).collect::<Vec<_>>());
        assert_eq!(a, Subspace::from_rows(b.field(), d * d, &from_ends));
        // sigma-fixed endomorphisms correspond to symmetric forms
        let adj = base.adjoint().unwrap();
        let fixed = adj.fixed_subspace(&ends);
        let sym: Vec<Vec<Fe>> = fixed.iter().map(|e| base.gram().mul(e).data).collect();
        let s = Subspace::from_rows(b.field(), d * d, &inv.symmetric.iter().map(|x| x.data.clone()).collect::<Vec<_>>());
        assert_eq!(s, Subspace::from_rows(b.field(), d * d, &sym));
    }

    #[test]
    fn adjoint_inverts_group_elements() {
        let b = s3_simple();
        let adj = b.adjoint().unwrap();
        let f = b.field();
        assert!(adj.apply(&Matrix::identity(f, 2)).is_identity());
        let g = b.module().group().clone();
        for x in g.whole().elements() {
            assert_eq!(adj.apply(b.module().act(*x)), *b.module().act(g.inv(*x)));
        }
    }

    proptest! {
        #[test]
        fn adjoint_is_antimultiplicative_involution(seed in 0u64..64) {
            let f = gf4();
            let mut r = rng(seed);
            let d = 4;
            let sym = |r: &mut crate::Rng| {
                let a = Matrix::random(&f, d, d, r);
                a.add(&a.transpose()).add(&Matrix::identity(&f, d).scaled(r.gen_range(0..4)))
            };
            let mut gram = sym(&mut r);
            while !gram.is_invertible() {
                gram = sym(&mut r);
            }
            let g = Arc::new(GroupTable::from_permutations(1, &[vec![0]]).unwrap());
            let m = ModuleRep::trivial(g.clone(), Arc::new(g.trivial()), &f);
            let m = ModuleRep::direct_sum(&[&m, &m, &m, &m]);
            let b = GForm::new(m, gram).unwrap();
            let adj = b.adjoint().unwrap();
            let x = Matrix::random(&f, d, d, &mut r);
            let y = Matrix::random(&f, d, d, &mut r);
            prop_assert_eq!(adj.apply(&adj.apply(&x)), x.clone());
            prop_assert_eq!(adj.apply(&x.mul(&y)), adj.apply(&y).mul(&adj.apply(&x)));
            // B(m1, f m2) = B(sigma(f) m1, m2)
            let u: Vec<Fe> = (0..d).map(|_| r.gen_range(0..4)).collect();
            let v: Vec<Fe> = (0..d).map(|_| r.gen_range(0..4)).collect();
            prop_assert_eq!(b.eval(&u, &x.mul_vec(&v)), b.eval(&adj.apply(&x).mul_vec(&u), &v));
        }

        #[test]
        fn complement_dimensions(seed in 0u64..40) {
            let b = s3_simple();
            let big = GForm::orthogonal_sum(&[&b, &b, &b]);
            let comps = decompose(big.module(), seed).unwrap();
            let l = &comps[0].subspace;
            let perp = orth_complement(&big, l);
            prop_assert_eq!(l.dim() + perp.dim(), big.dim());
            prop_assert!(big.module().is_submodule(&perp));
        }
    }

    #[test]
    fn projection_onto_diagonal() {
        let b = s3_simple();
        let f = b.field().clone();
        let two = GForm::orthogonal_sum(&[&b, &b]);
        // diagonal is isotropic in characteristic 2, so use (x, w x) with w^2 + 1 != 0
        let w: Fe = 2;
        let rows: Vec<Vec<Fe>> = (0..2)
            .map(|i| {
                let mut v = vec![0; 4];
                v[i] = 1;
                v[2 + i] = w;
                v
            })
            .collect();
        let l = Subspace::from_rows(&f, 4, &rows);
        let e = orth_projection(&two, &l).unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(two.adjoint().unwrap().apply(&e), e);
        assert_eq!(e.column_space(), l);
        assert_eq!(Subspace::from_rows(&f, 4, &e.kernel()), orth_complement(&two, &l));
        assert!(two.module().is_hom(two.module(), &e));
        // the plain diagonal is totally isotropic
        let diag = Subspace::from_rows(&f, 4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(orth_projection(&two, &diag), Err(Error::Degenerate));
        assert!(orth_projection(&b, &Subspace::full(&f, 2)).unwrap().is_identity());
    }

    #[test]
    fn pairing_on_paired_module() {
        let f = gf4();
        let b = s3_simple();
        let (p, gram) = paired_module(b.module());
        let pf = GForm::nondegenerate(p, gram).unwrap();
        let d = b.dim();
        let first = Subspace::from_rows(&f, 2 * d, &(0..d).map(|i| {
            let mut v = vec![0; 2 * d];
            v[i] = 1;
            v
        }).collect::<Vec<_>>());
        assert_eq!(orth_complement(&pf, &first), first);
        let theta = projection_along(&first, &first.complement());
        let cert = perfect_pairing(&pf, &theta).unwrap();
        assert!(cert.perfect && cert.iso.is_some());
        let id = perfect_pairing(&pf, &Matrix::identity(&f, 2 * d)).unwrap();
        assert!(id.perfect);
    }

    #[test]
    fn extension_restricts_back() {
        let b = s3_simple();
        let two = GForm::orthogonal_sum(&[&b, &b]);
        let f = b.field().clone();
        let comps = decompose(two.module(), 3).unwrap();
        let e = &comps[0].idempotent;
        let em = e.column_space();
        let inv = invariant_forms(&two.module().submodule(&em).unwrap());
        let bhat = inv.all[0].clone();
        let (ext, theta) = extend_form_from_summand(&two, e, &bhat).unwrap();
        assert_eq!(restricted_gram(ext.gram(), &em), bhat);
        assert_eq!(theta.transpose().mul(two.gram()), *ext.gram());
        assert!(two.module().is_hom(two.module(), &theta));
        let zero = Matrix::zeros(&f, em.dim(), em.dim());
        assert!(extend_form_from_summand(&two, e, &zero).unwrap().0.gram().is_zero());
        let (same, _) = extend_form_from_summand(&b, &Matrix::identity(&f, 2), b.gram()).unwrap();
        assert_eq!(same.gram(), b.gram());
    }

    #[test]
    fn induced_involution_form_is_bt() {
        // (k<t>, B_t) induced to G gives (kG, B_t) up to the coset basis
        let g = s3();
        let f = gf4();
        let t = g.involutions()[0];
        let c2 = g.closure(&[t]);
        let c2arc = Arc::new(c2.clone());
        let reg = ModuleRep::new(g.clone(), c2arc.clone(), f.clone(), vec![{
            let mut m = Matrix::zeros(&f, 2, 2);
            m.set(0, 1, 1);
            m.set(1, 0, 1);
            m
        }]).unwrap();
        // basis (1, t); B_t(x, y) = B_1(x t, y)
        let mut gram = Matrix::zeros(&f, 2, 2);
        gram.set(0, 1, 1);
        gram.set(1, 0, 1);
        let bt = GForm::nondegenerate(reg, gram).unwrap();
        let ind = induce_form(&bt, &g.whole());
        assert!(ind.is_symplectic() && ind.is_nondegenerate());
        // explicit isometry: coset basis t_i (x) {1, t} -> group elements t_i, t_i t
        let tr = g.left_transversal(&g.whole(), &c2);
        let n = g.order();
        let mut phi = Matrix::zeros(&f, n, n);
        for (i, &ti) in tr.reps.iter().enumerate() {
            phi.set(ti as usize, 2 * i, 1);
            phi.set(g.mul(ti, t) as usize, 2 * i + 1, 1);
        }
        assert!(is_isometry(&ind, &element_form(&g, &f, t), &phi));
        let trivial = induce_form(&bt, &c2);
        assert_eq!(trivial.gram(), bt.gram());
    }

    #[test]
    fn mackey_pieces_s3() {
        let g = s3();
        let f = gf4();
        let t = g.involutions()[0];
        let h = g.closure(&[t]);
        let l = GForm::nondegenerate(ModuleRep::trivial(g.clone(), Arc::new(h.clone()), &f), Matrix::identity(&f, 1)).unwrap();
        let pieces = mackey_decompose(&l, &h);
        assert_eq!(pieces.len(), g.double_cosets(&h, &h).len());
        let dims: Vec<usize> = pieces.iter().map(|p| p.form.dim()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 3);
        assert!(verify_mackey(&l, &h, &pieces));
        let whole = mackey_decompose(&l, &g.whole());
        assert_eq!(whole.len(), 1);
        assert!(verify_mackey(&l, &g.whole(), &whole));
        // a nontrivial source with a symplectic form, K a different subgroup
        let d = d12();
        let sub = d.sylow2();
        let kk = d.closure(&[d.involutions()[1]]);
        let lf = regular_on(&d, &sub, &f);
        let pieces = mackey_decompose(&lf, &kk);
        assert!(verify_mackey(&lf, &kk, &pieces));
    }

    /// k[sub] with B_1, as a module for sub.
    fn regular_on(g: &Arc<GroupTable>, sub: &Subgroup, f: &Field) -> GForm {
        let n = sub.order();
        let mats = sub
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(f, n, n);
                for (i, &x) in sub.elements().iter().enumerate() {
                    m.set(sub.position(g.mul(s, x)).unwrap(), i, 1);
                }
                m
            })
            .collect();
        let m = ModuleRep::new(g.clone(), Arc::new(sub.clone()), f.clone(), mats).unwrap();
        GForm::nondegenerate(m, Matrix::identity(f, n)).unwrap()
    }

    #[test]
    fn orth_decompose_simple_cases() {
        let b = s3_simple();
        let comps = orth_decompose(&b, 0).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Indecomposable);
        // paired module of a non-self-dual module
        let g = perm_group(3, &[vec![1, 2, 0]]);
        let f = gf4();
        let m = ModuleRep::new(g.clone(), Arc::new(g.whole()), f.clone(), vec![Matrix::from_vec(&f, 1, 1, vec![2])]).unwrap();
        let (p, gram) = paired_module(&m);
        let pf = GForm::nondegenerate(p, gram).unwrap();
        let comps = orth_decompose(&pf, 0).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::DualPair);
        assert!(verify_orth_decomposition(&pf, &comps, 0).unwrap());
    }

    #[test]
    fn orth_decompose_triple_sum() {
        let b = s3_simple();
        let big = GForm::orthogonal_sum(&[&b, &b, &b]);
        let mut sigs = alloc::collections::BTreeSet::new();
        for seed in 0..12 {
            let comps = orth_decompose(&big, seed).unwrap();
            assert!(verify_orth_decomposition(&big, &comps, seed).unwrap());
            let mut sig: Vec<(usize, ComponentKind)> = comps.iter().map(|c| (c.subspace.dim(), c.kind)).collect();
            sig.sort();
            sigs.insert(sig);
        }
        assert!(!sigs.is_empty());
    }

    #[test]
    fn pick_component_from_diagonal() {
        let b = s3_simple();
        let f = b.field().clone();
        // x -> (x, w x) pulls back (1 + w^2) B
        let w: Fe = 2;
        let mut alpha = Matrix::zeros(&f, 4, 2);
        for i in 0..2 {
            alpha.set(i, i, 1);
            alpha.set(2 + i, i, w);
        }
        let c = 1 ^ f.mul(w, w);
        let m = b.scaled(c);
        let (j, aj, gamma) = pick_nondegenerate_component(&m, &[&b, &b], &alpha).unwrap();
        assert_eq!(j, 0);
        let madj = m.adjoint().unwrap();
        assert_eq!(madj.apply(&gamma), gamma);
        assert!(gamma.is_invertible());
        let pulled = GForm::new(m.module().clone(), gamma.transpose().mul(m.gram())).unwrap();
        assert!(is_isometry(&pulled, &b, &aj));
        let single = pick_nondegenerate_component(&b, &[&b], &Matrix::identity(&f, 2)).unwrap();
        assert_eq!(single.0, 0);
    }

    #[test]
    fn involution_test_matches_conjugacy() {
        let g = d12();
        let inv = g.involutions();
        for &s in &inv {
            for &t in &inv {
                let conj = g.class_of(s) == g.class_of(t);
                let w = involution_component_test(&g, s, t);
                assert_eq!(w.is_some(), conj);
                if let Some(x) = w {
                    assert_eq!(g.conj(x, t), s);
                }
            }
        }
    }

    #[test]
    fn regular_symmetric_slice() {
        for g in [s3(), v4(), d12()] {
            let f = gf4();
            let m = ModuleRep::regular(g.clone(), &f);
            let inv = invariant_forms(&m);
            assert_eq!(inv.all.len(), g.order());
            let n_inv = g.involutions().len();
            let expected = 1 + n_inv + (g.order() - 1 - n_inv) / 2;
            assert_eq!(inv.symmetric.len(), expected);
            // B_a is symmetric iff a = a^o; the symplectic ones have no identity term
            let alg = crate::algebra::GroupAlgebra::new(g.clone(), &f);
            let mut patterns = vec![alg.one()];
            for &t in &g.involutions() {
                patterns.push(alg.element(t));
            }
            for x in 0..g.order() as u32 {
                let y = g.inv(x);
                if x < y {
                    patterns.push(algebra::add(&alg.element(x), &alg.element(y)));
                }
            }
            let n = g.order();
            let grams: Vec<Vec<Fe>> = patterns.iter().map(|a| regular_form(&g, &f, a).gram().data.clone()).collect();
            let sym = Subspace::from_rows(&f, n * n, &inv.symmetric.iter().map(|x| x.data.clone()).collect::<Vec<_>>());
            assert_eq!(sym, Subspace::from_rows(&f, n * n, &grams));
            assert_eq!(inv.symplectic.len(), expected - 1);
        }
    }

    #[test]
    fn v4_family_decomposes() {
        let g = v4();
        let f = gf4();
        let (r, s) = (g.gens()[0], g.gens()[1]);
        let t = g.mul(r, s);
        let br = element_form(&g, &f, r);
        let bs = element_form(&g, &f, s);
        let sum = GForm::orthogonal_sum(&[&br, &bs]);
        let alg = crate::algebra::GroupAlgebra::new(g.clone(), &f);
        for alpha in 1..4u16 {
            for beta in 1..4u16 {
                if alpha == beta {
                    continue;
                }
                let (sa, sb) = (f.sqrt(alpha), f.sqrt(beta));
                // y -> (sqrt(a) y, sqrt(b) y) and y -> (sqrt(b) y t, sqrt(a) y)
                let n = 4;
                let right = |c: &[Fe]| -> Matrix {
                    let mut m = Matrix::zeros(&f, n, n);
                    for y in 0..n as u32 {
                        let v = alg.mul(&alg.element(y), c);
                        for (i, &x) in v.iter().enumerate() {
                            m.set(i, y as usize, x);
                        }
                    }
                    m
                };
                let scal = |c: Fe| algebra::scale(&f, &alg.one(), c);
                let phi1 = right(&scal(sa)).vstack(&right(&scal(sb)));
                let phi2 = right(&algebra::scale(&f, &alg.element(t), sb)).vstack(&right(&scal(sa)));
                let mut a1 = vec![0; 4];
                a1[r as usize] = alpha;
                a1[s as usize] = beta;
                let mut a2 = vec![0; 4];
                a2[r as usize] = beta;
                a2[s as usize] = alpha;
                let b1 = regular_form(&g, &f, &a1);
                let b2 = regular_form(&g, &f, &a2);
                assert!(b1.is_symplectic() && b1.is_nondegenerate());
                assert!(b2.is_symplectic() && b2.is_nondegenerate());
                assert!(is_isometry(&b1, &sum, &phi1));
                assert!(is_isometry(&b2, &sum, &phi2));
                assert!(phi1.hstack(&phi2).is_invertible());
                assert!(phi1.transpose().mul(sum.gram()).mul(&phi2).is_zero());
            }
        }
        let _ = bs.module().same_acting(br.module());
    }

    #[test]
    fn lift_recovers_idempotent() {
        let b = s3_simple();
        let big = GForm::orthogonal_sum(&[&b, &b]);
        let f = b.field().clone();
        let m = big.module();
        let ends = rep::end_algebra(m);
        let alg = MatAlgebra::new(&f, m.dim(), &ends);
        let adj = big.adjoint().unwrap();
        let le = rep::end_structure(m, 0).unwrap();
        assert!(matches!(le, rep::EndStructure::Decomposable));
        // I = 0: the identity lifts to itself
        let zero = Subspace::zero(&f, 16);
        let id = Matrix::identity(&f, 4);
        assert!(lift_selfadjoint_idempotent(&alg, &adj, &zero, &id, 0).unwrap().is_identity());
        let _ = alg.one();
    }
}
