//! Finite-dimensional algebras: primitive idempotents, local corners,
//! Jacobson radical, idempotent lifting.
//!
//! Elements are flat coefficient vectors; each algebra says how to multiply.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::field::{Fe, Field};
use crate::group::GroupTable;
use crate::linalg::{Echelon, Matrix, Subspace, Tracked};
use crate::poly::{self, Poly};
use crate::{Error, Result};

pub trait FdAlgebra {
    fn field(&self) -> &Field;
    /// Length of a flat element.
    fn flat_len(&self) -> usize;
    fn one(&self) -> Vec<Fe>;
    fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe>;
    /// A spanning set.
    fn spanning(&self) -> Vec<Vec<Fe>>;

    /// Spanning set of e A e given a spanning set of a corner containing it.
    fn corner_spanning(&self, e: &[Fe], parent: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        parent.iter().map(|b| self.mul(&self.mul(e, b), e)).collect()
    }

    /// Whether every product of `depth` elements of span(n) vanishes.
    fn products_vanish(&self, n: &[Vec<Fe>], depth: usize) -> bool {
        let f = self.field().clone();
        let mut w: Vec<Vec<Fe>> = independent(&f, self.flat_len(), n);
        for _ in 1..depth {
            if w.is_empty() {
                return true;
            }
            let mut next = Echelon::new(&f, self.flat_len(), false);
            let mut keep = Vec::new();
            for a in n {
                for b in &w {
                    let p = self.mul(a, b);
                    if next.insert(&p) {
                        keep.push(p);
                    }
                }
            }
            w = keep;
        }
        w.is_empty()
    }
}

/// Independent subset, in order.
pub fn independent(f: &Field, n: usize, vs: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut e = Echelon::new(f, n, false);
    vs.iter().filter(|v| e.insert(v)).cloned().collect()
}

pub fn add(a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

pub fn scale(f: &Field, a: &[Fe], c: Fe) -> Vec<Fe> {
    let mut v = a.to_vec();
    f.scale(&mut v, c);
    v
}

pub fn is_zero(a: &[Fe]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Minimal polynomial of x inside the corner with identity e.
pub fn min_poly_in<A: FdAlgebra + ?Sized>(alg: &A, e: &[Fe], x: &[Fe]) -> Poly {
    let f = alg.field();
    let mut ech = Echelon::new(f, alg.flat_len(), true);
    let mut p = e.to_vec();
    loop {
        match ech.insert_tracked(&p) {
            Tracked::New => p = alg.mul(&p, x),
            Tracked::Dependent(c) => {
                let mut m = c;
                m.push(1);
                return m;
            }
        }
    }
}

pub fn eval_poly_in<A: FdAlgebra + ?Sized>(alg: &A, e: &[Fe], p: &[Fe], x: &[Fe]) -> Vec<Fe> {
    let f = alg.field();
    let mut acc = vec![0; alg.flat_len()];
    for &c in p.iter().rev() {
        acc = alg.mul(&acc, x);
        f.axpy(&mut acc, e, c);
    }
    acc
}

/// Orthogonal idempotents e_i = q_i(x), one per primary factor of the
/// minimal polynomial of x in the corner of e. They sum to e.
pub fn primary_idempotents<A: FdAlgebra + ?Sized>(
    alg: &A,
    e: &[Fe],
    x: &[Fe],
    factors: &[(Poly, usize)],
    minpoly: &[Fe],
) -> Vec<Vec<Fe>> {
    let f = alg.field();
    factors
        .iter()
        .map(|(g, k)| {
            let mut u: Poly = vec![1];
            for _ in 0..*k {
                u = poly::mul(f, &u, g);
            }
            let v = poly::divrem(f, minpoly, &u).0;
            let (_, _, t) = poly::ext_gcd(f, &u, &v);
            let q = poly::rem(f, &poly::mul(f, &t, &v), minpoly);
            eval_poly_in(alg, e, &q, x)
        })
        .collect()
}

/// A primitive idempotent with a certified local corner algebra e A e whose
/// residue field is the ground field.
#[derive(Clone, Debug)]
pub struct LocalCorner {
    pub e: Vec<Fe>,
    /// basis of e A e
    pub basis: Vec<Vec<Fe>>,
    /// J(e A e), spanned by basis element minus eigenvalue times e
    pub radical: Subspace,
    pos: usize,
    e_val: Fe,
}

impl LocalCorner {
    /// The scalar c is congruent to modulo J, for c in e A e.
    pub fn residue(&self, c: &[Fe]) -> Fe {
        let r = self.radical.reduce(c);
        self.radical.field().div(r[self.pos], self.e_val)
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub enum LocalTest {
    Local(LocalCorner),
    Split(Vec<Vec<Fe>>),
    Unknown,
}

/// Certifies e A e local with residue field k, or splits e, or gives up.
pub fn certify_local<A: FdAlgebra + ?Sized, R: Rng>(alg: &A, e: &[Fe], basis: &[Vec<Fe>], rng: &mut R) -> LocalTest {
    let f = alg.field().clone();
    let mut nil = Vec::new();
    for b in basis {
        let mu = min_poly_in(alg, e, b);
        let fac = poly::factor(&f, &mu, rng);
        if fac.len() >= 2 {
            return LocalTest::Split(primary_idempotents(alg, e, b, &fac, &mu));
        }
        let (g, _) = &fac[0];
        if g.len() != 2 {
            return LocalTest::Unknown;
        }
        // g = x + lambda
        let lambda = g[0];
        let mut n = b.clone();
        f.axpy(&mut n, e, lambda);
        nil.push(n);
    }
    if !alg.products_vanish(&nil, basis.len() + 1) {
        return LocalTest::Unknown;
    }
    let radical = Subspace::from_rows(&f, alg.flat_len(), &nil);
    let re = radical.reduce(e);
    let Some(pos) = re.iter().position(|&x| x != 0) else { return LocalTest::Unknown };
    LocalTest::Local(LocalCorner { e: e.to_vec(), basis: basis.to_vec(), radical, pos, e_val: re[pos] })
}

const SPLIT_TRIES: usize = 64;

/// Complete set of orthogonal primitive idempotents, each with a certified
/// local corner. Deterministic for a fixed rng state.
pub fn primitive_idempotents<A: FdAlgebra + ?Sized, R: Rng>(alg: &A, rng: &mut R) -> Result<Vec<LocalCorner>> {
    let f = alg.field().clone();
    let n = alg.flat_len();
    let one = alg.one();
    let top = independent(&f, n, &alg.spanning());
    let mut stack: Vec<(Vec<Fe>, Vec<Vec<Fe>>)> = vec![(one, top)];
    let mut out = Vec::new();
    while let Some((e, basis)) = stack.pop() {
        if basis.len() == 1 {
            // corner is k e
            let radical = Subspace::zero(&f, n);
            let pos = e.iter().position(|&x| x != 0).unwrap();
            out.push(LocalCorner { e_val: e[pos], e, basis, radical, pos });
            continue;
        }
        let split = match certify_local(alg, &e, &basis, rng) {
            LocalTest::Local(lc) => {
                out.push(lc);
                continue;
            }
            LocalTest::Split(ids) => Some(ids),
            LocalTest::Unknown => {
                let mut found = None;
                for _ in 0..SPLIT_TRIES {
                    let mut x = vec![0; n];
                    for b in &basis {
                        f.axpy(&mut x, b, rng.gen_range(0..f.order()) as Fe);
                    }
                    let mu = min_poly_in(alg, &e, &x);
                    let fac = poly::factor(&f, &mu, rng);
                    if fac.len() >= 2 {
                        found = Some(primary_idempotents(alg, &e, &x, &fac, &mu));
                        break;
                    }
                }
                found
            }
        };
        let Some(ids) = split else {
            return Err(Error::NotSplit(format!("corner of dimension {} resists splitting", basis.len())));
        };
        for id in ids {
            let sp = alg.corner_spanning(&id, &basis);
            let b = independent(&f, n, &sp);
            stack.push((id, b));
        }
    }
    Ok(out)
}

/// Basis of e_i A e_j.
pub fn peirce_block<A: FdAlgebra + ?Sized>(alg: &A, ei: &[Fe], ej: &[Fe], spanning: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let sp: Vec<Vec<Fe>> = spanning.iter().map(|b| alg.mul(&alg.mul(ei, b), ej)).collect();
    independent(alg.field(), alg.flat_len(), &sp)
}

/// e_i J e_j = { x in e_i A e_j : residue_i(x y) = 0 for y in e_j A e_i }.
pub fn radical_block<A: FdAlgebra + ?Sized>(
    alg: &A,
    ci: &LocalCorner,
    xij: &[Vec<Fe>],
    yji: &[Vec<Fe>],
) -> Vec<Vec<Fe>> {
    let f = alg.field();
    if xij.is_empty() {
        return Vec::new();
    }
    if yji.is_empty() {
        return xij.to_vec();
    }
    // rows: y_l, cols: x_k
    let mut m = Matrix::zeros(f, yji.len(), xij.len());
    for (l, y) in yji.iter().enumerate() {
        for (k, x) in xij.iter().enumerate() {
            m.set(l, k, ci.residue(&alg.mul(x, y)));
        }
    }
    m.kernel()
        .iter()
        .map(|c| {
            let mut v = vec![0; alg.flat_len()];
            for (ck, x) in c.iter().zip(xij) {
                f.axpy(&mut v, x, *ck);
            }
            v
        })
        .collect()
}

/// J(A) from a complete set of local primitive idempotents.
pub fn radical<A: FdAlgebra + ?Sized>(alg: &A, corners: &[LocalCorner]) -> Subspace {
    let sp = alg.spanning();
    let mut rows = Vec::new();
    for ci in corners {
        for cj in corners {
            let xij = peirce_block(alg, &ci.e, &cj.e, &sp);
            let yji = peirce_block(alg, &cj.e, &ci.e, &sp);
            rows.extend(radical_block(alg, ci, &xij, &yji));
        }
    }
    Subspace::from_rows(alg.field(), alg.flat_len(), &rows)
}

/// Whether e_i and e_j are conjugate (A e_i isomorphic to A e_j).
pub fn idempotents_equivalent<A: FdAlgebra + ?Sized>(
    alg: &A,
    ci: &LocalCorner,
    cj: &LocalCorner,
    spanning: &[Vec<Fe>],
) -> bool {
    let xij = peirce_block(alg, &ci.e, &cj.e, spanning);
    let yji = peirce_block(alg, &cj.e, &ci.e, spanning);
    xij.iter().any(|x| yji.iter().any(|y| ci.residue(&alg.mul(x, y)) != 0))
}

/// Idempotent e with e = e^2, sigma(e) = e and e - a in I, where the image
/// of a in A/I is a sigma-invariant idempotent. Uses (a sigma(a))^(2^s) when
/// that is idempotent and the primary component at 1 otherwise.
pub fn lift_selfadjoint_idempotent<A: FdAlgebra + ?Sized, R: Rng>(
    alg: &A,
    sigma: &dyn Fn(&[Fe]) -> Vec<Fe>,
    ideal: &Subspace,
    a: &[Fe],
    rng: &mut R,
) -> Result<Vec<Fe>> {
    let b = alg.mul(a, &sigma(a));
    let dim = ideal.ambient().max(2);
    let s = (usize::BITS - (dim - 1).leading_zeros()) as usize + 1;
    let mut e = b.clone();
    for _ in 0..s {
        e = alg.mul(&e, &e);
    }
    if alg.mul(&e, &e) != e {
        e = unit_component(alg, &b, rng);
    }
    let ok = alg.mul(&e, &e) == e && sigma(&e) == e && ideal.contains(&add(&e, a));
    if !ok {
        return Err(Error::Precondition("image of a is not a sigma-invariant idempotent modulo I".into()));
    }
    Ok(e)
}

/// Primary idempotent of b for the eigenvalue 1, computed in A.
fn unit_component<A: FdAlgebra + ?Sized, R: Rng>(alg: &A, b: &[Fe], rng: &mut R) -> Vec<Fe> {
    let f = alg.field().clone();
    let one = alg.one();
    let mu = min_poly_in(alg, &one, b);
    let fac = poly::factor(&f, &mu, rng);
    let ids = primary_idempotents(alg, &one, b, &fac, &mu);
    fac.iter()
        .zip(ids)
        .find(|((g, _), _)| g.as_slice() == [1, 1])
        .map(|(_, e)| e)
        .unwrap_or_else(|| vec![0; alg.flat_len()])
}

/// A primitive sigma-invariant idempotent lifting the primitive idempotent
/// image of a modulo I.
pub fn lift_primitive_selfadjoint<A: FdAlgebra + ?Sized, R: Rng>(
    alg: &A,
    sigma: &dyn Fn(&[Fe]) -> Vec<Fe>,
    ideal: &Subspace,
    a: &[Fe],
    rng: &mut R,
) -> Result<Vec<Fe>> {
    let f = alg.field().clone();
    let c = unit_component(alg, a, rng);
    let corner = CornerAlgebra::new(alg, &c);
    let prims = primitive_idempotents(&corner, rng)?;
    let g = prims
        .iter()
        .map(|p| p.e.clone())
        .find(|p| !ideal.contains(p))
        .ok_or_else(|| Error::Precondition("a lies in I".into()))?;
    let _ = &f;
    lift_selfadjoint_idempotent(alg, sigma, ideal, &g, rng)
}

/// The corner e A e as an algebra in its own right.
pub struct CornerAlgebra<'a, A: FdAlgebra + ?Sized> {
    pub parent: &'a A,
    pub e: Vec<Fe>,
    basis: Vec<Vec<Fe>>,
}

impl<'a, A: FdAlgebra + ?Sized> CornerAlgebra<'a, A> {
    pub fn new(parent: &'a A, e: &[Fe]) -> Self {
        let sp = parent.corner_spanning(e, &parent.spanning());
        let basis = independent(parent.field(), parent.flat_len(), &sp);
        CornerAlgebra { parent, e: e.to_vec(), basis }
    }
}

impl<A: FdAlgebra + ?Sized> FdAlgebra for CornerAlgebra<'_, A> {
    fn field(&self) -> &Field {
        self.parent.field()
    }
    fn flat_len(&self) -> usize {
        self.parent.flat_len()
    }
    fn one(&self) -> Vec<Fe> {
        self.e.clone()
    }
    fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        self.parent.mul(a, b)
    }
    fn spanning(&self) -> Vec<Vec<Fe>> {
        self.basis.clone()
    }
    fn products_vanish(&self, n: &[Vec<Fe>], depth: usize) -> bool {
        self.parent.products_vanish(n, depth)
    }
}

/// Subalgebra of d x d matrices given by a spanning set containing the identity.
pub struct MatAlgebra {
    field: Field,
    d: usize,
    basis: Vec<Vec<Fe>>,
}

impl MatAlgebra {
    pub fn new(f: &Field, d: usize, span: &[Matrix]) -> MatAlgebra {
        let flat: Vec<Vec<Fe>> = span.iter().map(|m| m.data.clone()).collect();
        MatAlgebra { field: f.clone(), d, basis: independent(f, d * d, &flat) }
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn size(&self) -> usize {
        self.d
    }
    pub fn to_matrix(&self, a: &[Fe]) -> Matrix {
        Matrix::from_vec(&self.field, self.d, self.d, a.to_vec())
    }
    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.basis.iter().map(|b| self.to_matrix(b)).collect()
    }
}

impl FdAlgebra for MatAlgebra {
    fn field(&self) -> &Field {
        &self.field
    }
    fn flat_len(&self) -> usize {
        self.d * self.d
    }
    fn one(&self) -> Vec<Fe> {
        Matrix::identity(&self.field, self.d).data
    }
    fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        self.to_matrix(a).mul(&self.to_matrix(b)).data
    }
    fn spanning(&self) -> Vec<Vec<Fe>> {
        self.basis.clone()
    }
    /// Chain of images of k^d under products of elements of span(n).
    fn products_vanish(&self, n: &[Vec<Fe>], depth: usize) -> bool {
        let mats: Vec<Matrix> = n.iter().map(|x| self.to_matrix(x)).collect();
        let mut w: Vec<Vec<Fe>> = Matrix::identity(&self.field, self.d).row_vecs();
        for _ in 0..depth.min(self.d + 1) {
            if w.is_empty() {
                return true;
            }
            let mut ech = Echelon::new(&self.field, self.d, false);
            let mut next = Vec::new();
            for m in &mats {
                for v in &w {
                    let u = m.mul_vec(v);
                    if ech.insert(&u) {
                        next.push(u);
                    }
                }
            }
            w = next;
        }
        w.is_empty()
    }
}

/// The group algebra kG with the group elements as basis.
pub struct GroupAlgebra {
    pub group: Arc<GroupTable>,
    field: Field,
}

impl GroupAlgebra {
    pub fn new(group: Arc<GroupTable>, f: &Field) -> GroupAlgebra {
        GroupAlgebra { group, field: f.clone() }
    }

    /// g * x for a group element g.
    pub fn left_shift(&self, g: u32, x: &[Fe]) -> Vec<Fe> {
        let mut out = vec![0; x.len()];
        for (h, &c) in x.iter().enumerate() {
            if c != 0 {
                out[self.group.mul(g, h as u32) as usize] = c;
            }
        }
        out
    }

    /// x * g for a group element g.
    pub fn right_shift(&self, x: &[Fe], g: u32) -> Vec<Fe> {
        let mut out = vec![0; x.len()];
        for (h, &c) in x.iter().enumerate() {
            if c != 0 {
                out[self.group.mul(h as u32, g) as usize] = c;
            }
        }
        out
    }

    /// Basis of the left ideal kG x, by spinning under the generators.
    pub fn left_ideal(&self, x: &[Fe]) -> Vec<Vec<Fe>> {
        let n = self.group.order();
        let mut ech = Echelon::new(&self.field, n, false);
        let mut basis = Vec::new();
        if ech.insert(x) {
            basis.push(x.to_vec());
        }
        let mut i = 0;
        while i < basis.len() {
            for &s in self.group.gens() {
                let v = self.left_shift(s, &basis[i]);
                if ech.insert(&v) {
                    basis.push(v);
                }
            }
            i += 1;
        }
        basis
    }

    pub fn element(&self, g: u32) -> Vec<Fe> {
        let mut v = vec![0; self.group.order()];
        v[g as usize] = 1;
        v
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self, x: &[Fe]) -> Fe {
        x.iter().fold(0, |a, &c| a ^ c)
    }

    /// x^o: the antipode g -> g^-1 extended linearly.
    pub fn antipode(&self, x: &[Fe]) -> Vec<Fe> {
        let mut out = vec![0; x.len()];
        for (h, &c) in x.iter().enumerate() {
            out[self.group.inv(h as u32) as usize] = c;
        }
        out
    }
}

impl FdAlgebra for GroupAlgebra {
    fn field(&self) -> &Field {
        &self.field
    }
    fn flat_len(&self) -> usize {
        self.group.order()
    }
    fn one(&self) -> Vec<Fe> {
        self.element(0)
    }
    fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let n = self.group.order();
        let mut out = vec![0; n];
        let nb: Vec<(u32, Fe)> = b.iter().enumerate().filter(|(_, &c)| c != 0).map(|(h, &c)| (h as u32, c)).collect();
        for (g, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for &(h, cb) in &nb {
                out[self.group.mul(g as u32, h) as usize] ^= self.field.mul(ca, cb);
            }
        }
        out
    }
    fn spanning(&self) -> Vec<Vec<Fe>> {
        (0..self.group.order() as u32).map(|g| self.element(g)).collect()
    }
    fn corner_spanning(&self, e: &[Fe], parent: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
        let ideal = self.left_ideal(e);
        if ideal.len() < parent.len() {
            ideal.iter().map(|v| self.mul(e, v)).collect()
        } else {
            parent.iter().map(|b| self.mul(&self.mul(e, b), e)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn sym3() -> Arc<GroupTable> {
        Arc::new(GroupTable::from_permutations(3, &[alloc::vec![1, 0, 2], alloc::vec![1, 2, 0]]).unwrap())
    }

    #[test]
    fn group_algebra_s3_over_gf4() {
        // kS3 = P(k) + 2 P(2), P(k) of dim 2 and the 2-dim simple projective
        let g = sym3();
        let f = Field::new(2).unwrap();
        let a = GroupAlgebra::new(g, &f);
        let prims = primitive_idempotents(&a, &mut rng(1)).unwrap();
        assert_eq!(prims.len(), 3);
        let mut sum = vec![0; 6];
        for p in &prims {
            assert_eq!(a.mul(&p.e, &p.e), p.e);
            sum = add(&sum, &p.e);
            for q in &prims {
                if !core::ptr::eq(p, q) {
                    assert!(is_zero(&a.mul(&p.e, &q.e)));
                }
            }
        }
        assert_eq!(sum, a.one());
        let mut dims: Vec<usize> = prims.iter().map(|p| a.left_ideal(&p.e).len()).collect();
        dims.sort();
        assert_eq!(dims, alloc::vec![2, 2, 2]);
        // radical of kS3 is 1-dim, spanned by the sum over the 3-cycle subgroup coset sums
        let j = radical(&a, &prims);
        assert_eq!(j.dim(), 1);
        let jv = j.basis_vecs();
        assert!(is_zero(&a.mul(&jv[0], &jv[0])));
    }

    #[test]
    fn matrix_algebra_full_splits_into_rank_one() {
        let f = Field::new(1).unwrap();
        let mut span = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let mut m = Matrix::zeros(&f, 3, 3);
                m.set(i, j, 1);
                span.push(m);
            }
        }
        let alg = MatAlgebra::new(&f, 3, &span);
        let prims = primitive_idempotents(&alg, &mut rng(3)).unwrap();
        assert_eq!(prims.len(), 3);
        for p in &prims {
            assert_eq!(alg.to_matrix(&p.e).rank(), 1);
        }
        assert!(radical(&alg, &prims).dim() == 0);
        assert!(idempotents_equivalent(&alg, &prims[0], &prims[1], &alg.spanning()));
    }

    #[test]
    fn nonsplit_field_extension_reports() {
        // GF(4) inside 2x2 matrices over GF(2): a field, not split
        let f = Field::new(1).unwrap();
        let c = Matrix::from_rows(&f, 2, &[alloc::vec![0, 1], alloc::vec![1, 1]]);
        let alg = MatAlgebra::new(&f, 2, &[Matrix::identity(&f, 2), c]);
        assert!(matches!(primitive_idempotents(&alg, &mut rng(0)), Err(Error::NotSplit(_))));
    }

    #[test]
    fn lift_in_commutative_algebra() {
        // span{I, D, N}, D = diag(1,1,0), N = E01; commutative, so sigma = id is admissible
        let f = Field::new(1).unwrap();
        let mut d = Matrix::identity(&f, 3);
        d.set(2, 2, 0);
        let mut n = Matrix::zeros(&f, 3, 3);
        n.set(0, 1, 1);
        let alg = MatAlgebra::new(&f, 3, &[Matrix::identity(&f, 3), d.clone(), n.clone()]);
        let ideal = Subspace::from_rows(&f, 9, &[n.data.clone()]);
        let a = d.add(&n).data;
        let e = lift_selfadjoint_idempotent(&alg, &|x: &[Fe]| x.to_vec(), &ideal, &a, &mut rng(0)).unwrap();
        assert_eq!(e, d.data);
    }

}
