//! Modules for a group given by generator matrices, hom spaces by spinning,
//! decomposition into indecomposables, projective indecomposables.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use rand::Rng;

use crate::algebra::{self, FdAlgebra, GroupAlgebra, LocalCorner, LocalTest, MatAlgebra};
use crate::field::{Fe, Field};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::{Echelon, Matrix, Subspace, Tracked};
use crate::{rng, Error, Result};

/// A kH-module for a subgroup H of a fixed group G.
#[derive(Clone)]
pub struct ModuleRep {
    group: Arc<GroupTable>,
    sub: Arc<Subgroup>,
    field: Field,
    dim: usize,
    mats: Vec<Matrix>,
    action: OnceCell<Vec<Matrix>>,
}

impl core::fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "ModuleRep(dim {}, acting group of order {}, {:?})", self.dim, self.sub.order(), self.field)
    }
}

impl ModuleRep {
    /// Validated constructor: the matrices must define a homomorphism from H.
    pub fn new(group: Arc<GroupTable>, sub: Arc<Subgroup>, field: Field, mats: Vec<Matrix>) -> Result<ModuleRep> {
        if mats.len() != sub.gens().len() {
            return Err(Error::NotRep(format!("{} matrices for {} generators", mats.len(), sub.gens().len())));
        }
        let dim = mats.first().map_or(0, |m| m.rows);
        for m in &mats {
            if m.rows != dim || m.cols != dim {
                return Err(Error::Dim("generator matrices must be square of equal size".into()));
            }
            if m.field() != &field {
                return Err(Error::Field("generator matrix over a different field".into()));
            }
        }
        if mats.is_empty() && sub.order() > 1 {
            return Err(Error::NotRep("nontrivial group without generators".into()));
        }
        let m = ModuleRep::new_unchecked(group, sub, field, dim, mats);
        let action = m.compute_action(true)?;
        let _ = m.action.set(action);
        Ok(m)
    }

    pub fn new_unchecked(group: Arc<GroupTable>, sub: Arc<Subgroup>, field: Field, dim: usize, mats: Vec<Matrix>) -> ModuleRep {
        ModuleRep { group, sub, field, dim, mats, action: OnceCell::new() }
    }

    fn with_action(group: Arc<GroupTable>, sub: Arc<Subgroup>, field: Field, dim: usize, action: Vec<Matrix>) -> ModuleRep {
        let mats = sub.gens().iter().map(|&g| action[sub.position(g).unwrap()].clone()).collect();
        let m = ModuleRep::new_unchecked(group, sub, field, dim, mats);
        let _ = m.action.set(action);
        m
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn acting(&self) -> &Arc<Subgroup> {
        &self.sub
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gen_matrices(&self) -> &[Matrix] {
        &self.mats
    }

    fn compute_action(&self, check: bool) -> Result<Vec<Matrix>> {
        let h = &self.sub;
        let mut act: Vec<Option<Matrix>> = vec![None; h.order()];
        act[0] = Some(Matrix::identity(&self.field, self.dim));
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let mx = act[h.position(x).unwrap()].clone().unwrap();
            for (s, ms) in h.gens().iter().zip(&self.mats) {
                let y = self.group.mul(x, *s);
                let py = h.position(y).ok_or_else(|| Error::NotRep("generator outside acting group".into()))?;
                match &act[py] {
                    None => {
                        act[py] = Some(mx.mul(ms));
                        queue.push(y);
                    }
                    Some(my) => {
                        if check && *my != mx.mul(ms) {
                            return Err(Error::NotRep("matrices violate a group relation".into()));
                        }
                    }
                }
            }
            i += 1;
        }
        act.into_iter()
            .map(|m| m.ok_or_else(|| Error::NotRep("generators do not generate the acting group".into())))
            .collect()
    }

    /// Matrices for every element of the acting group, by position.
    pub fn action(&self) -> &[Matrix] {
        self.action.get_or_init(|| self.compute_action(false).expect("consistent module"))
    }

    /// rho(x) for x in the acting group.
    pub fn act(&self, x: u32) -> &Matrix {
        &self.action()[self.sub.position(x).expect("element outside acting group")]
    }

    pub fn same_acting(&self, other: &ModuleRep) -> bool {
        self.sub.as_ref() == other.sub.as_ref() && self.field == other.field
    }

    pub fn trivial(group: Arc<GroupTable>, sub: Arc<Subgroup>, field: &Field) -> ModuleRep {
        let mats = sub.gens().iter().map(|_| Matrix::identity(field, 1)).collect();
        ModuleRep::new_unchecked(group, sub, field.clone(), 1, mats)
    }

    /// kG with g acting by left multiplication; basis = group elements.
    pub fn regular(group: Arc<GroupTable>, field: &Field) -> ModuleRep {
        let n = group.order();
        let sub = Arc::new(group.whole());
        let mats = sub
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(field, n, n);
                for h in 0..n as u32 {
                    m.set(group.mul(s, h) as usize, h as usize, 1);
                }
                m
            })
            .collect();
        ModuleRep::new_unchecked(group, sub, field.clone(), n, mats)
    }

    /// Natural permutation module of a group given by permutations.
    pub fn natural_permutation(group: Arc<GroupTable>, field: &Field) -> Result<ModuleRep> {
        let (deg, perms) = group.permutations().ok_or_else(|| Error::Precondition("group has no permutation action".into()))?;
        let sub = Arc::new(group.whole());
        let mats = sub
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(field, deg, deg);
                for (i, &j) in perms[s as usize].iter().enumerate() {
                    m.set(j as usize, i, 1);
                }
                m
            })
            .collect();
        Ok(ModuleRep::new_unchecked(group.clone(), sub, field.clone(), deg, mats))
    }

    /// Checks the defining relations by recomputing the full action.
    pub fn validate(&self) -> Result<()> {
        self.compute_action(true).map(|_| ())
    }

    pub fn dual(&self) -> ModuleRep {
        let mats = self.mats.iter().map(|m| m.inverse().expect("invertible generator").transpose()).collect();
        ModuleRep::new_unchecked(self.group.clone(), self.sub.clone(), self.field.clone(), self.dim, mats)
    }

    pub fn restrict(&self, h: &Subgroup) -> ModuleRep {
        assert!(h.is_subgroup_of(&self.sub), "restriction to a non-subgroup");
        let mats = h.gens().iter().map(|&g| self.act(g).clone()).collect();
        ModuleRep::new_unchecked(self.group.clone(), Arc::new(h.clone()), self.field.clone(), self.dim, mats)
    }

    /// Induced module Ind_H^K over the fixed left transversal of H in K.
    /// Basis: coset-major, t_i (x) l_j at index i * dim + j.
    pub fn induce(&self, k: &Subgroup) -> ModuleRep {
        let g = &self.group;
        let h = &self.sub;
        assert!(h.is_subgroup_of(k), "induction from a non-subgroup");
        let t = g.left_transversal(k, h);
        let (r, d) = (t.len(), self.dim);
        let big = r * d;
        let block = |x: u32| -> Matrix {
            let mut m = Matrix::zeros(&self.field, big, big);
            for (i, &ti) in t.reps.iter().enumerate() {
                let y = g.mul(x, ti);
                let j = t.coset_of[y as usize] as usize;
                let hh = g.mul(g.inv(t.reps[j]), y);
                m.set_block(j * d, i * d, self.act(hh));
            }
            m
        };
        let ksub = Arc::new(k.clone());
        if k.order() * big * big <= 20_000_000 {
            let action: Vec<Matrix> = k.elements().iter().map(|&x| block(x)).collect();
            ModuleRep::with_action(g.clone(), ksub, self.field.clone(), big, action)
        } else {
            let mats = k.gens().iter().map(|&x| block(x)).collect();
            ModuleRep::new_unchecked(g.clone(), ksub, self.field.clone(), big, mats)
        }
    }

    /// ^g L as a module for g H g^-1.
    pub fn conjugate(&self, g: u32) -> ModuleRep {
        let grp = &self.group;
        let h2 = grp.conjugate(&self.sub, g);
        let gi = grp.inv(g);
        let mats = h2.gens().iter().map(|&x| self.act(grp.conj(gi, x)).clone()).collect();
        ModuleRep::new_unchecked(grp.clone(), Arc::new(h2), self.field.clone(), self.dim, mats)
    }

    pub fn direct_sum(parts: &[&ModuleRep]) -> ModuleRep {
        let first = parts[0];
        let dim = parts.iter().map(|m| m.dim).sum();
        let mats = (0..first.mats.len())
            .map(|i| {
                let blocks: Vec<Matrix> = parts.iter().map(|m| m.mats[i].clone()).collect();
                Matrix::block_diag(&first.field, &blocks)
            })
            .collect();
        ModuleRep::new_unchecked(first.group.clone(), first.sub.clone(), first.field.clone(), dim, mats)
    }

    /// Scalar extension along an embedding of the coefficient field.
    pub fn extend_field(&self, big: &Field) -> Result<ModuleRep> {
        let table = big.embedding_from(&self.field)?;
        let mats = self.mats.iter().map(|m| m.embed(big, &table)).collect();
        Ok(ModuleRep::new_unchecked(self.group.clone(), self.sub.clone(), big.clone(), self.dim, mats))
    }

    pub fn is_submodule(&self, w: &Subspace) -> bool {
        self.mats.iter().all(|m| w.contains_subspace(&w.image(m)))
    }

    /// Submodule on the RREF basis of w.
    pub fn submodule(&self, w: &Subspace) -> Result<ModuleRep> {
        if !self.is_submodule(w) {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
        Ok(self.submodule_unchecked(w))
    }

    pub fn submodule_unchecked(&self, w: &Subspace) -> ModuleRep {
        let k = w.dim();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = (0..k).map(|i| w.coords_unchecked(&m.mul_vec(w.basis().row(i)))).collect();
                Matrix::from_cols(&self.field, k, &cols)
            })
            .collect();
        ModuleRep::new_unchecked(self.group.clone(), self.sub.clone(), self.field.clone(), k, mats)
    }

    /// M / W on the standard complement of W; also the projection matrix.
    pub fn quotient(&self, w: &Subspace) -> Result<(ModuleRep, Matrix)> {
        if !self.is_submodule(w) {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
        let comp = w.complement();
        let free: Vec<usize> = comp.pivots().to_vec();
        let k = free.len();
        let proj_vec = |v: &[Fe]| -> Vec<Fe> {
            let r = w.reduce(v);
            free.iter().map(|&c| r[c]).collect()
        };
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = free.iter().map(|&c| proj_vec(&m.col(c))).collect();
                Matrix::from_cols(&self.field, k, &cols)
            })
            .collect();
        let mut p = Matrix::zeros(&self.field, k, self.dim);
        for j in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[j] = 1;
            for (i, x) in proj_vec(&e).into_iter().enumerate() {
                p.set(i, j, x);
            }
        }
        Ok((ModuleRep::new_unchecked(self.group.clone(), self.sub.clone(), self.field.clone(), k, mats), p))
    }

    /// Submodule generated by the given vectors.
    pub fn spin(&self, seeds: &[Vec<Fe>]) -> Subspace {
        let mut ech = Echelon::new(&self.field, self.dim, false);
        let mut basis: Vec<Vec<Fe>> = Vec::new();
        for s in seeds {
            if ech.insert(s) {
                basis.push(s.clone());
            }
        }
        let mut i = 0;
        while i < basis.len() {
            for m in &self.mats {
                let v = m.mul_vec(&basis[i]);
                if ech.insert(&v) {
                    basis.push(v);
                }
            }
            i += 1;
        }
        Subspace::from_rows(&self.field, self.dim, &basis)
    }

    /// Whether f commutes with the action (f: self -> other).
    pub fn is_hom(&self, other: &ModuleRep, f: &Matrix) -> bool {
        self.mats.iter().zip(&other.mats).all(|(a, b)| b.mul(f) == f.mul(a))
    }

    /// Relative trace sum over t in K/H of t f t^-1, for f commuting with H.
    pub fn rel_trace(&self, f: &Matrix, h: &Subgroup, k: &Subgroup) -> Matrix {
        let g = &self.group;
        let t = g.left_transversal(k, h);
        let mut acc = Matrix::zeros(&self.field, self.dim, self.dim);
        for &x in &t.reps {
            acc.add_assign(&self.act(x).mul(f).mul(self.act(g.inv(x))));
        }
        acc
    }
}

struct Spin {
    /// spin basis, in order of discovery
    vecs: Vec<Vec<Fe>>,
    origin: Vec<Origin>,
    /// (parent, generator, coefficients over vecs) with A_g w_parent dependent
    relations: Vec<(usize, usize, Vec<Fe>)>,
    seeds: usize,
}

#[derive(Clone, Copy)]
enum Origin {
    Seed(usize),
    Image(usize, usize),
}

fn spin_basis(m: &ModuleRep) -> Spin {
    let d = m.dim;
    let mut ech = Echelon::new(&m.field, d, true);
    let mut vecs: Vec<Vec<Fe>> = Vec::new();
    let mut origin = Vec::new();
    let mut relations = Vec::new();
    let mut seeds = 0;
    let mut done = 0;
    for j in 0..d {
        if ech.is_full() {
            break;
        }
        let mut e = vec![0; d];
        e[j] = 1;
        if !ech.insert(&e) {
            continue;
        }
        vecs.push(e);
        origin.push(Origin::Seed(seeds));
        seeds += 1;
        while done < vecs.len() {
            for (gi, a) in m.mats.iter().enumerate() {
                let v = a.mul_vec(&vecs[done]);
                match ech.insert_tracked(&v) {
                    Tracked::New => {
                        vecs.push(v);
                        origin.push(Origin::Image(done, gi));
                    }
                    Tracked::Dependent(c) => relations.push((done, gi, c)),
                }
            }
            done += 1;
        }
    }
    Spin { vecs, origin, relations, seeds }
}

/// Basis of Hom_H(M, N) as N.dim x M.dim matrices, canonical for fixed inputs.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Vec<Matrix> {
    assert!(m.same_acting(n), "hom between modules for different groups");
    let f = &m.field;
    let (d, e) = (m.dim, n.dim);
    if d == 0 || e == 0 {
        return Vec::new();
    }
    let sp = spin_basis(m);
    let u = sp.seeds * e;
    // images of spin vectors as e x u matrices in the unknowns
    let mut l: Vec<Matrix> = Vec::with_capacity(d);
    for o in &sp.origin {
        let li = match *o {
            Origin::Seed(k) => {
                let mut z = Matrix::zeros(f, e, u);
                for i in 0..e {
                    z.set(i, k * e + i, 1);
                }
                z
            }
            Origin::Image(p, g) => n.mats[g].mul(&l[p]),
        };
        l.push(li);
    }
    let mut rel = Echelon::new(f, u, false);
    for (p, g, c) in &sp.relations {
        let mut r = n.mats[*g].mul(&l[*p]);
        for (ci, li) in c.iter().zip(&l) {
            if *ci != 0 {
                r.axpy(*ci, li);
            }
        }
        for i in 0..e {
            rel.insert(r.row(i));
            if rel.is_full() {
                return Vec::new();
            }
        }
    }
    let rows = rel.to_subspace();
    let kernel = rows.basis().kernel();
    if kernel.is_empty() {
        return Vec::new();
    }
    let w = Matrix::from_cols(f, d, &sp.vecs);
    let winv = w.inverse().expect("spin basis");
    let mut out: Vec<Vec<Fe>> = Vec::with_capacity(kernel.len());
    for x in &kernel {
        let cols: Vec<Vec<Fe>> = l.iter().map(|li| li.mul_vec(x)).collect();
        out.push(Matrix::from_cols(f, e, &cols).mul(&winv).data);
    }
    let canon = Subspace::from_rows(f, d * e, &out);
    canon.basis_vecs().into_iter().map(|v| Matrix::from_vec(f, e, d, v)).collect()
}

pub fn end_algebra(m: &ModuleRep) -> Vec<Matrix> {
    hom_space(m, m)
}

/// End(M) with its local structure, for an absolutely indecomposable M.
#[derive(Clone, Debug)]
pub struct LocalEnd {
    pub basis: Vec<Matrix>,
    pub corner: LocalCorner,
    pub dim: usize,
}

impl LocalEnd {
    pub fn residue(&self, c: &Matrix) -> Fe {
        self.corner.residue(&c.data)
    }
    pub fn is_unit(&self, c: &Matrix) -> bool {
        self.residue(c) != 0
    }
    /// Basis of J(End M).
    pub fn radical(&self) -> Vec<Matrix> {
        let f = self.corner.radical.field().clone();
        self.corner.radical.basis_vecs().into_iter().map(|v| Matrix::from_vec(&f, self.dim, self.dim, v)).collect()
    }
}

pub enum EndStructure {
    Local(LocalEnd),
    Decomposable,
}

/// Local structure of End(M), or a certificate that M decomposes.
pub fn end_structure(m: &ModuleRep, seed: u64) -> Result<EndStructure> {
    let basis = end_algebra(m);
    let alg = MatAlgebra::new(&m.field, m.dim, &basis);
    let mut r = rng(seed);
    let one = alg.one();
    match algebra::certify_local(&alg, &one, &alg.spanning(), &mut r) {
        LocalTest::Local(corner) => Ok(EndStructure::Local(LocalEnd { basis, corner, dim: m.dim })),
        LocalTest::Split(_) => Ok(EndStructure::Decomposable),
        LocalTest::Unknown => {
            let prims = algebra::primitive_idempotents(&alg, &mut r)?;
            if prims.len() >= 2 {
                Ok(EndStructure::Decomposable)
            } else {
                Ok(EndStructure::Local(LocalEnd { basis, corner: prims.into_iter().next().unwrap(), dim: m.dim }))
            }
        }
    }
}

pub fn local_end(m: &ModuleRep) -> Result<LocalEnd> {
    match end_structure(m, 0)? {
        EndStructure::Local(l) => Ok(l),
        EndStructure::Decomposable => Err(Error::Decomposable),
    }
}

/// Absolute indecomposability; errors if End(M)/J is a proper field extension.
pub fn is_indecomposable(m: &ModuleRep) -> Result<bool> {
    Ok(matches!(end_structure(m, 0)?, EndStructure::Local(_)))
}

/// An indecomposable summand.
#[derive(Clone, Debug)]
pub struct Component {
    pub subspace: Subspace,
    /// the primitive idempotent of End(M) projecting onto the component
    pub idempotent: Matrix,
    pub module: ModuleRep,
}

/// Krull-Schmidt decomposition via primitive idempotents of End(M).
/// Components are sorted by (dimension, subspace).
pub fn decompose(m: &ModuleRep, seed: u64) -> Result<Vec<Component>> {
    if m.dim == 0 {
        return Ok(Vec::new());
    }
    let basis = end_algebra(m);
    let alg = MatAlgebra::new(&m.field, m.dim, &basis);
    let prims = algebra::primitive_idempotents(&alg, &mut rng(seed))?;
    let mut comps: Vec<Component> = prims
        .iter()
        .map(|p| {
            let e = alg.to_matrix(&p.e);
            let subspace = e.column_space();
            let module = m.submodule_unchecked(&subspace);
            Component { subspace, idempotent: e, module }
        })
        .collect();
    comps.sort_by(|a, b| {
        a.subspace.dim().cmp(&b.subspace.dim()).then_with(|| a.subspace.basis().data.cmp(&b.subspace.basis().data))
    });
    Ok(comps)
}

/// Coordinate matrix (k x d) of the RREF basis of w, valid on w.
pub fn coord_matrix(w: &Subspace) -> Matrix {
    let f = w.field();
    let mut c = Matrix::zeros(f, w.dim(), w.ambient());
    for (i, &p) in w.pivots().iter().enumerate() {
        c.set(i, p, 1);
    }
    c
}

/// Inclusion matrix (d x k) of the RREF basis of w.
pub fn inclusion_matrix(w: &Subspace) -> Matrix {
    w.basis().transpose()
}

/// An isomorphism a -> b, if one exists.
pub fn module_iso(a: &ModuleRep, b: &ModuleRep, seed: u64) -> Result<Option<Matrix>> {
    if a.dim != b.dim || !a.same_acting(b) {
        return Ok(None);
    }
    if a.dim == 0 {
        return Ok(Some(Matrix::zeros(&a.field, 0, 0)));
    }
    let h = hom_space(a, b);
    if h.is_empty() {
        return Ok(None);
    }
    if let Some(f) = h.iter().find(|f| f.is_invertible()) {
        return Ok(Some(f.clone()));
    }
    let mut r = rng(seed);
    let fld = a.field.clone();
    for _ in 0..24 {
        let mut x = Matrix::zeros(&fld, b.dim, a.dim);
        for hi in &h {
            x.axpy(r.gen_range(0..fld.order()) as Fe, hi);
        }
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    if hom_space(b, a).is_empty() {
        return Ok(None);
    }
    // compare Krull-Schmidt decompositions
    let ca = decompose(a, seed)?;
    let cb = decompose(b, seed)?;
    if ca.len() != cb.len() {
        return Ok(None);
    }
    if ca.len() == 1 {
        // indecomposable: a basis hom would have been invertible
        return Ok(None);
    }
    let mut used = vec![false; cb.len()];
    let mut total = Matrix::zeros(&fld, b.dim, a.dim);
    for x in &ca {
        let mut found = None;
        for (j, y) in cb.iter().enumerate() {
            if used[j] || y.module.dim != x.module.dim {
                continue;
            }
            if let Some(iso) = module_iso(&x.module, &y.module, seed)? {
                found = Some((j, iso));
                break;
            }
        }
        let Some((j, iso)) = found else { return Ok(None) };
        used[j] = true;
        let piece = inclusion_matrix(&cb[j].subspace).mul(&iso).mul(&coord_matrix(&x.subspace)).mul(&x.idempotent);
        total.add_assign(&piece);
    }
    debug_assert!(total.is_invertible() && a.is_hom(b, &total));
    Ok(Some(total))
}

pub fn is_selfdual(m: &ModuleRep) -> Result<bool> {
    Ok(module_iso(m, &m.dual(), 0)?.is_some())
}

/// Groups isomorphic modules; returns class index per module (first occurrence order).
pub fn iso_classes(mods: &[&ModuleRep], seed: u64) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(mods.len());
    for (i, m) in mods.iter().enumerate() {
        let mut cls = None;
        for (c, &r) in reps.iter().enumerate() {
            if module_iso(mods[r], m, seed)?.is_some() {
                cls = Some(c);
                break;
            }
        }
        out.push(cls.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(out)
}

/// M + M* with P((m1, f1), (m2, f2)) = f1(m2) + f2(m1). Returns the module and Gram matrix.
pub fn paired_module(m: &ModuleRep) -> (ModuleRep, Matrix) {
    let d = m.dim;
    let p = ModuleRep::direct_sum(&[m, &m.dual()]);
    let mut gram = Matrix::zeros(&m.field, 2 * d, 2 * d);
    for i in 0..d {
        gram.set(i, d + i, 1);
        gram.set(d + i, i, 1);
    }
    (p, gram)
}

/// A projective indecomposable kG-module.
#[derive(Clone, Debug)]
pub struct Pim {
    pub module: ModuleRep,
    /// generating primitive idempotent of kG
    pub idempotent: Vec<Fe>,
    /// basis of the left ideal kG e, in kG coordinates
    pub ideal: Subspace,
    /// number of summands of kG isomorphic to this one (= dimension of its head)
    pub multiplicity: usize,
    pub trivial_head: bool,
}

/// PIMs of kG up to isomorphism, trivial-head one first then by dimension.
pub fn pims(group: &Arc<GroupTable>, field: &Field, seed: u64) -> Result<Vec<Pim>> {
    let alg = GroupAlgebra::new(group.clone(), field);
    let prims = algebra::primitive_idempotents(&alg, &mut rng(seed))?;
    let mut all: Vec<Pim> = prims.iter().map(|p| pim_from_idempotent(&alg, &p.e)).collect();
    all.sort_by(|a, b| a.module.dim.cmp(&b.module.dim).then_with(|| a.idempotent.cmp(&b.idempotent)));
    let refs: Vec<&ModuleRep> = all.iter().map(|p| &p.module).collect();
    let cls = iso_classes(&refs, seed)?;
    let ncls = cls.iter().max().map_or(0, |c| c + 1);
    let mut out: Vec<Pim> = Vec::new();
    for c in 0..ncls {
        let idx: Vec<usize> = (0..all.len()).filter(|&i| cls[i] == c).collect();
        let mut p = all[idx[0]].clone();
        p.multiplicity = idx.len();
        out.push(p);
    }
    out.sort_by(|a, b| b.trivial_head.cmp(&a.trivial_head).then_with(|| a.module.dim.cmp(&b.module.dim)));
    Ok(out)
}

/// The module kG e.
pub fn pim_from_idempotent(alg: &GroupAlgebra, e: &[Fe]) -> Pim {
    let group = alg.group.clone();
    let field = alg.field().clone();
    let ideal = Subspace::from_rows(&field, group.order(), &alg.left_ideal(e));
    let k = ideal.dim();
    let mats = group
        .gens()
        .iter()
        .map(|&s| {
            let cols: Vec<Vec<Fe>> = (0..k).map(|i| ideal.coords_unchecked(&alg.left_shift(s, ideal.basis().row(i)))).collect();
            Matrix::from_cols(&field, k, &cols)
        })
        .collect();
    let module = ModuleRep::new_unchecked(group.clone(), Arc::new(group.whole()), field, k, mats);
    let trivial_head = alg.augmentation(e) != 0;
    Pim { module, idempotent: e.to_vec(), ideal, multiplicity: 1, trivial_head }
}

/// Simple modules of kG as heads of the PIMs, in the order of `pims`.
pub fn simple_modules(group: &Arc<GroupTable>, field: &Field, seed: u64) -> Result<Vec<ModuleRep>> {
    let alg = GroupAlgebra::new(group.clone(), field);
    let prims = algebra::primitive_idempotents(&alg, &mut rng(seed))?;
    let ps = pims(group, field, seed)?;
    let mut out = Vec::new();
    for p in &ps {
        // rad(kG e) = sum over i of e_i J e
        let basis_p = alg.left_ideal(&p.idempotent);
        let mut rad_rows: Vec<Vec<Fe>> = Vec::new();
        for ci in &prims {
            let xij: Vec<Vec<Fe>> = basis_p.iter().map(|v| alg.mul(&ci.e, v)).collect();
            let xij = algebra::independent(field, group.order(), &xij);
            let basis_i = alg.left_ideal(&ci.e);
            let yji: Vec<Vec<Fe>> = basis_i.iter().map(|v| alg.mul(&p.idempotent, v)).collect();
            let yji = algebra::independent(field, group.order(), &yji);
            rad_rows.extend(algebra::radical_block(&alg, ci, &xij, &yji));
        }
        let coords: Vec<Vec<Fe>> = rad_rows.iter().map(|v| p.ideal.coords_unchecked(v)).collect();
        let rad = Subspace::from_rows(field, p.module.dim, &coords);
        let (head, _) = p.module.quotient(&rad)?;
        if head.dim != p.multiplicity {
            return Err(Error::Internal(format!("head of dimension {} but multiplicity {}", head.dim, p.multiplicity)));
        }
        out.push(head);
    }
    Ok(out)
}

/// For indecomposable M: whether M is a summand of Ind_V^G Z, via Frobenius
/// reciprocity. Returns (a, b) in Hom_V(Z, M), Hom_V(M, Z) with tr_V^G(a b) invertible.
pub fn divides_induced(m: &ModuleRep, z: &ModuleRep) -> Option<(Matrix, Matrix)> {
    let v = z.acting().as_ref().clone();
    let res = m.restrict(&v);
    let a_basis = hom_space(z, &res);
    if a_basis.is_empty() {
        return None;
    }
    let b_basis = hom_space(&res, z);
    for a in &a_basis {
        for b in &b_basis {
            let t = m.rel_trace(&a.mul(b), &v, m.acting());
            if t.is_invertible() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<GroupTable> {
        Arc::new(GroupTable::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap())
    }
    fn s4() -> Arc<GroupTable> {
        Arc::new(GroupTable::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap())
    }

    // brute force Hom over GF(2): all matrices commuting with the generators
    fn brute_hom_dim(m: &ModuleRep, n: &ModuleRep) -> usize {
        let (d, e) = (m.dim(), n.dim());
        let mut count = 0usize;
        for bits in 0u64..(1 << (d * e)) {
            let data: Vec<Fe> = (0..d * e).map(|i| (bits >> i & 1) as Fe).collect();
            let f = Matrix::from_vec(m.field(), e, d, data);
            if m.is_hom(n, &f) {
                count += 1;
            }
        }
        count.trailing_zeros() as usize
    }

    #[test]
    fn hom_dims_match_brute_force() {
        let g = s3();
        let f = Field::new(1).unwrap();
        let perm = ModuleRep::natural_permutation(g.clone(), &f).unwrap();
        let triv = ModuleRep::trivial(g.clone(), Arc::new(g.whole()), &f);
        assert_eq!(hom_space(&perm, &perm).len(), brute_hom_dim(&perm, &perm));
        assert_eq!(hom_space(&perm, &triv).len(), brute_hom_dim(&perm, &triv));
        assert_eq!(hom_space(&triv, &perm).len(), brute_hom_dim(&triv, &perm));
        let reg = ModuleRep::regular(g.clone(), &f);
        assert_eq!(hom_space(&reg, &reg).len(), 6);
        for h in hom_space(&perm, &perm) {
            assert!(perm.is_hom(&perm, &h));
        }
    }

    #[test]
    fn natural_module_of_s4_is_uniserial_indecomposable() {
        let g = s4();
        let f = Field::new(2).unwrap();
        let perm = ModuleRep::natural_permutation(g, &f).unwrap();
        assert!(is_indecomposable(&perm).unwrap());
        assert!(perm.validate().is_ok());
    }

    #[test]
    fn s3_permutation_module_splits() {
        let g = s3();
        let f = Field::new(2).unwrap();
        let perm = ModuleRep::natural_permutation(g, &f).unwrap();
        let comps = decompose(&perm, 1).unwrap();
        let dims: Vec<usize> = comps.iter().map(|c| c.module.dim()).collect();
        assert_eq!(dims, vec![1, 2]);
        for c in &comps {
            assert!(is_indecomposable(&c.module).unwrap());
        }
    }

    #[test]
    fn dual_and_induction() {
        let g = s4();
        let f = Field::new(1).unwrap();
        let p = g.sylow2();
        let triv = ModuleRep::trivial(g.clone(), Arc::new(p.clone()), &f);
        let ind = triv.induce(&g.whole());
        assert_eq!(ind.dim(), 3);
        assert!(ind.validate().is_ok());
        assert!(is_selfdual(&ind).unwrap());
        let nat = ModuleRep::natural_permutation(g.clone(), &f).unwrap();
        assert!(nat.dual().validate().is_ok());
    }

    #[test]
    fn pims_of_s3_and_s4() {
        let f = Field::new(2).unwrap();
        let ps = pims(&s3(), &f, 0).unwrap();
        let dims: Vec<(usize, usize)> = ps.iter().map(|p| (p.module.dim(), p.multiplicity)).collect();
        assert_eq!(dims, vec![(2, 1), (2, 2)]);
        assert!(ps[0].trivial_head);
        let ps = pims(&s4(), &f, 0).unwrap();
        let dims: Vec<(usize, usize)> = ps.iter().map(|p| (p.module.dim(), p.multiplicity)).collect();
        assert_eq!(dims, vec![(8, 1), (8, 2)]);
        let simples = simple_modules(&s4(), &f, 0).unwrap();
        assert_eq!(simples.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn regular_module_is_sum_of_pims() {
        let g = s3();
        let f = Field::new(2).unwrap();
        let reg = ModuleRep::regular(g.clone(), &f);
        let comps = decompose(&reg, 5).unwrap();
        assert_eq!(comps.len(), 3);
        let iso = module_iso(&reg, &reg, 0).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn induced_summand_test() {
        // trivial S4-module is a summand of Ind from the Sylow subgroup of the trivial module
        let g = s4();
        let f = Field::new(1).unwrap();
        let p = Arc::new(g.sylow2());
        let triv_g = ModuleRep::trivial(g.clone(), Arc::new(g.whole()), &f);
        let triv_p = ModuleRep::trivial(g.clone(), p, &f);
        assert!(divides_induced(&triv_g, &triv_p).is_some());
        let triv_1 = ModuleRep::trivial(g.clone(), Arc::new(g.trivial()), &f);
        assert!(divides_induced(&triv_g, &triv_1).is_none());
    }
}
