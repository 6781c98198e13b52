//! Blocks of kG from the class-sum algebra, central characters, defect and
//! extended defect groups, the quadratic-type test for projective
//! indecomposables, and the trace construction of the block idempotent
//! from an extended defect group.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{self, FdAlgebra};
use crate::field::{Fe, Field};
use crate::forms::{self, GForm};
use crate::group::{GroupTable, Subgroup};
use crate::linalg::Matrix;
use crate::rep::{self, coord_matrix, hom_space, inclusion_matrix, local_end, module_iso, ModuleRep};
use crate::vertex;
use crate::{rng, Error, Result};

/// Z(kG) in the basis of class sums, structure constants counted mod 2.
pub struct ClassAlgebra {
    group: Arc<GroupTable>,
    field: Field,
    n: usize,
    consts: Vec<u8>,
}

impl ClassAlgebra {
    pub fn new(group: Arc<GroupTable>, field: &Field) -> ClassAlgebra {
        let classes = group.conjugacy_classes();
        let n = classes.len();
        let mut consts = vec![0u8; n * n * n];
        for (l, cl) in classes.iter().enumerate() {
            let c = cl.rep;
            for (i, ci) in classes.iter().enumerate() {
                for &x in &ci.elements {
                    let y = group.mul(group.inv(x), c);
                    let j = group.class_of(y);
                    consts[(i * n + j) * n + l] ^= 1;
                }
            }
        }
        ClassAlgebra { group, field: field.clone(), n, consts }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn class_sum(&self, i: usize) -> Vec<Fe> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    /// The element of kG with the given class coefficients.
    pub fn to_group_algebra(&self, z: &[Fe]) -> Vec<Fe> {
        (0..self.group.order() as u32).map(|g| z[self.group.class_of(g)]).collect()
    }

    /// x^(2^s) with 2^s at least the dimension.
    pub fn frobenius_power(&self, x: &[Fe]) -> Vec<Fe> {
        let mut y = x.to_vec();
        let mut p = 1;
        while p < self.n.max(2) {
            y = self.mul(&y, &y);
            p *= 2;
        }
        y
    }

    /// Number of blocks: the rank of the Frobenius power on class sums,
    /// whose kernel is the nilradical of Z(kG).
    pub fn semisimple_rank(&self) -> usize {
        let cols: Vec<Vec<Fe>> = (0..self.n).map(|i| self.frobenius_power(&self.class_sum(i))).collect();
        Matrix::from_cols(&self.field, self.n, &cols).rank()
    }
}

impl FdAlgebra for ClassAlgebra {
    fn field(&self) -> &Field {
        &self.field
    }
    fn flat_len(&self) -> usize {
        self.n
    }
    fn one(&self) -> Vec<Fe> {
        self.class_sum(self.group.class_of(0))
    }
    fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let n = self.n;
        let mut out = vec![0; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = f.mul(x, y);
                let row = &self.consts[(i * n + j) * n..(i * n + j + 1) * n];
                for (l, &s) in row.iter().enumerate() {
                    if s != 0 {
                        out[l] ^= c;
                    }
                }
            }
        }
        out
    }
    fn spanning(&self) -> Vec<Vec<Fe>> {
        (0..self.n).map(|i| self.class_sum(i)).collect()
    }
}

/// A block of kG.
#[derive(Clone, Debug)]
pub struct BlockInfo {
    pub index: usize,
    /// e_B = sum of alpha_i C_i^+
    pub coeffs: Vec<Fe>,
    pub support: Vec<usize>,
    pub real: bool,
    pub principal: bool,
    /// omega_B(C_i^+) per class
    pub central_character: Vec<Fe>,
    /// classes C_j with alpha_j and omega_B(C_j^+) nonzero
    pub defect_classes: Vec<usize>,
    pub defect_class: usize,
    pub defect_group: Subgroup,
    /// real defect class and Sylow 2-subgroup of its extended centralizer
    pub real_defect_class: Option<usize>,
    pub extended_defect_group: Option<Subgroup>,
}

impl BlockInfo {
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// omega_B of a central element in class-sum coordinates.
    pub fn central_character_of(&self, f: &Field, z: &[Fe]) -> Fe {
        z.iter().zip(&self.central_character).fold(0, |acc, (&a, &w)| acc ^ f.mul(a, w))
    }
}

/// All blocks, principal first, then ordered by coefficients.
pub fn block_decomposition(group: &Arc<GroupTable>, field: &Field, seed: u64) -> Result<Vec<BlockInfo>> {
    let alg = ClassAlgebra::new(group.clone(), field);
    let corners = algebra::primitive_idempotents(&alg, &mut rng(seed))?;
    let rank = alg.semisimple_rank();
    if corners.len() != rank {
        return Err(Error::Internal(format!("{} block idempotents but semisimple rank {rank}", corners.len())));
    }
    let classes = group.conjugacy_classes();
    let n = classes.len();
    let mut blocks = Vec::new();
    for c in &corners {
        let coeffs = c.e.clone();
        let support: Vec<usize> = (0..n).filter(|&i| coeffs[i] != 0).collect();
        if support.iter().any(|&i| !classes[i].is_2regular) {
            return Err(Error::Internal("block idempotent supported off the 2-regular classes".into()));
        }
        let real = (0..n).all(|i| coeffs[i] == coeffs[classes[i].inverse_class]);
        let principal = support.iter().fold(0, |acc, &i| acc ^ if classes[i].size() % 2 == 1 { coeffs[i] } else { 0 }) != 0;
        let central_character: Vec<Fe> = (0..n).map(|i| c.residue(&alg.mul(&alg.class_sum(i), &c.e))).collect();
        if c.residue(&c.e) != 1 {
            return Err(Error::Internal("central character does not send e_B to 1".into()));
        }
        let defect_classes: Vec<usize> = support.iter().copied().filter(|&j| central_character[j] != 0).collect();
        if defect_classes.is_empty() {
            return Err(Error::Internal("block without a defect class".into()));
        }
        let (defect_class, defect_group, real_defect_class, extended_defect_group) = defect_data(group, &defect_classes, real)?;
        blocks.push(BlockInfo {
            index: 0,
            coeffs,
            support,
            real,
            principal,
            central_character,
            defect_classes,
            defect_class,
            defect_group,
            real_defect_class,
            extended_defect_group,
        });
    }
    blocks.sort_by(|a, b| b.principal.cmp(&a.principal).then_with(|| a.support.cmp(&b.support)).then_with(|| a.coeffs.cmp(&b.coeffs)));
    for (i, b) in blocks.iter_mut().enumerate() {
        b.index = i;
    }
    if blocks.iter().filter(|b| b.principal).count() != 1 {
        return Err(Error::Internal("expected exactly one principal block".into()));
    }
    Ok(blocks)
}

type DefectData = (usize, Subgroup, Option<usize>, Option<Subgroup>);

/// Defect group from every defect class (all must agree up to conjugacy),
/// and for real blocks the extended defect group from every real defect class.
fn defect_data(group: &GroupTable, defect_classes: &[usize], real: bool) -> Result<DefectData> {
    let classes = group.conjugacy_classes();
    let mut d0: Option<Subgroup> = None;
    for &j in defect_classes {
        let d = group.sylow2_of(&group.centralizer(classes[j].rep));
        match &d0 {
            None => d0 = Some(d),
            Some(x) => {
                if group.subgroup_conjugate(x, &d).is_none() {
                    return Err(Error::Internal("defect classes give non-conjugate defect groups".into()));
                }
            }
        }
    }
    let first = defect_classes[0];
    if !real {
        return Ok((first, d0.unwrap(), None, None));
    }
    let mut chosen: Option<(usize, Subgroup, Subgroup)> = None;
    for &j in defect_classes {
        if !classes[j].is_real {
            continue;
        }
        let c = classes[j].rep;
        let e = group.sylow2_of(&group.extended_centralizer(c));
        let d = group.intersection(&e, &group.centralizer(c));
        if e.order() != d.order() && e.order() != 2 * d.order() {
            return Err(Error::Internal("extended defect group of index above 2".into()));
        }
        if group.subgroup_conjugate(&d, d0.as_ref().unwrap()).is_none() {
            return Err(Error::Internal("real defect class with a different defect group".into()));
        }
        match &chosen {
            None => chosen = Some((j, d, e)),
            Some((_, _, e0)) => {
                if group.subgroup_conjugate(e0, &e).is_none() {
                    return Err(Error::Internal("real defect classes give non-conjugate extended defect groups".into()));
                }
            }
        }
    }
    let (j, d, e) = chosen.ok_or_else(|| Error::Internal("real block without a real defect class".into()))?;
    Ok((j, d, Some(j), Some(e)))
}

/// kG e_B acting on M: sum over the support of alpha_i times the class sums.
fn block_action(m: &ModuleRep, b: &BlockInfo) -> Matrix {
    let g = m.group();
    let f = m.field();
    let classes = g.conjugacy_classes();
    let mut acc = Matrix::zeros(f, m.dim(), m.dim());
    for &i in &b.support {
        for &x in &classes[i].elements {
            acc.axpy(b.coeffs[i], m.act(x));
        }
    }
    acc
}

/// The block containing an indecomposable kG-module.
pub fn block_of_module<'a>(m: &ModuleRep, blocks: &'a [BlockInfo]) -> Result<&'a BlockInfo> {
    if m.acting().order() != m.group().order() {
        return Err(Error::Precondition("block membership needs a kG-module".into()));
    }
    let id = Matrix::identity(m.field(), m.dim());
    blocks.iter().find(|b| block_action(m, b) == id).ok_or(Error::Decomposable)
}

/// Whether the principal block idempotent acts as the identity.
pub fn in_principal_block(m: &ModuleRep, seed: u64) -> Result<bool> {
    let blocks = block_decomposition(m.group(), m.field(), seed)?;
    Ok(block_of_module(m, &blocks)?.principal)
}

/// Sum of the block idempotents, pairwise products and idempotence.
pub fn verify_blocks(group: &Arc<GroupTable>, field: &Field, blocks: &[BlockInfo]) -> bool {
    let alg = ClassAlgebra::new(group.clone(), field);
    let mut sum = vec![0; alg.len()];
    for (i, a) in blocks.iter().enumerate() {
        if alg.mul(&a.coeffs, &a.coeffs) != a.coeffs {
            return false;
        }
        for b in &blocks[i + 1..] {
            if alg.mul(&a.coeffs, &b.coeffs).iter().any(|&x| x != 0) {
                return false;
            }
        }
        sum = algebra::add(&sum, &a.coeffs);
    }
    sum == alg.one()
}

/// Result of the quadratic-type test for an involution class representative.
#[derive(Clone, Debug)]
pub struct InvolutionTest {
    pub involution: u32,
    /// basis index m with B(tm, m) != 0
    pub head_witness: Option<usize>,
    /// a map P(M) -> kG pulling B_t back to a nondegenerate form
    pub regular_witness: Option<Matrix>,
}

#[derive(Clone, Debug)]
pub struct QuadraticReport {
    /// the symplectic form on M
    pub form: Matrix,
    pub tests: Vec<InvolutionTest>,
    pub quadratic: bool,
    /// both criteria agree for every involution
    pub routes_agree: bool,
}

/// Index of M among the simple modules, with its projective cover.
pub fn projective_cover(m: &ModuleRep, seed: u64) -> Result<Option<rep::Pim>> {
    let simples = rep::simple_modules(m.group(), m.field(), seed)?;
    let pims = rep::pims(m.group(), m.field(), seed)?;
    for (s, p) in simples.iter().zip(pims) {
        if s.dim() == m.dim() && module_iso(s, m, seed)?.is_some() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// A nondegenerate invariant form on a self-dual indecomposable module.
pub fn some_nondegenerate_form(m: &ModuleRep) -> Option<Matrix> {
    forms::invariant_forms(m).all.into_iter().find(|g| g.is_invertible())
}

/// A map P -> kG pulling B_a back to a nondegenerate form, if any.
pub fn regular_component(p: &ModuleRep, a: &[Fe]) -> Result<Option<Matrix>> {
    let g = p.group().clone();
    let f = p.field().clone();
    let bt = forms::regular_form(&g, &f, a);
    let gp = some_nondegenerate_form(p).ok_or_else(|| Error::Precondition("module is not self-dual".into()))?;
    let local = local_end(p)?;
    let homs = hom_space(p, bt.module());
    Ok(vertex::nondegenerate_pullback(&homs, &gp, bt.gram(), &local))
}

/// For a nontrivial self-dual irreducible M with its symplectic form B:
/// q_t(m) = B(tm, m) on basis vectors against B_t on summands P(M) of kG.
pub fn quadratic_type_pim(m: &ModuleRep, seed: u64) -> Result<QuadraticReport> {
    let g = m.group().clone();
    let f = m.field().clone();
    let pim = projective_cover(m, seed)?.ok_or_else(|| Error::Precondition("module is not irreducible".into()))?;
    if pim.trivial_head {
        return Err(Error::Precondition("module is trivial".into()));
    }
    if !rep::is_selfdual(m)? {
        return Err(Error::Precondition("module is not self-dual".into()));
    }
    let form = forms::symmetric_form(m).ok_or_else(|| Error::Internal("self-dual irreducible without a symmetric form".into()))?;
    let b = GForm::nondegenerate(m.clone(), form.clone())?;
    if !b.is_symplectic() {
        return Err(Error::Internal("form on a nontrivial irreducible is not symplectic".into()));
    }
    let mut tests = Vec::new();
    let mut routes_agree = true;
    let classes = g.conjugacy_classes();
    for cl in classes.iter().filter(|c| c.element_order == 2) {
        let t = cl.rep;
        let rt = m.act(t);
        let head_witness = (0..m.dim()).find(|&i| {
            let mut e = vec![0; m.dim()];
            e[i] = 1;
            b.eval(&rt.mul_vec(&e), &e) != 0
        });
        let mut a = vec![0; g.order()];
        a[t as usize] = 1;
        let regular_witness = regular_component(&pim.module, &a)?;
        routes_agree &= head_witness.is_some() == regular_witness.is_some();
        tests.push(InvolutionTest { involution: t, head_witness, regular_witness });
    }
    let _ = &f;
    let quadratic = tests.iter().any(|t| t.head_witness.is_some());
    Ok(QuadraticReport { form, tests, quadratic, routes_agree })
}

/// q_t(m) = B(tm, m).
pub fn q_t(b: &GForm, t: u32, m: &[Fe]) -> Fe {
    b.eval(&b.module().act(t).mul_vec(m), m)
}

/// kG as a G x G-module, (g1, g2) x = g1 x g2^-1, for G x G = direct_product(G, G).
pub fn bimodule(group: &Arc<GroupTable>, gg: &Arc<GroupTable>, field: &Field) -> Result<ModuleRep> {
    let n = group.order();
    let perm = |img: &dyn Fn(u32) -> u32| {
        let mut a = Matrix::zeros(field, n, n);
        for x in 0..n as u32 {
            a.set(img(x) as usize, x as usize, 1);
        }
        a
    };
    let mut mats = Vec::new();
    for &s in gg.gens() {
        let (s1, s2) = (s / n as u32, s % n as u32);
        let s2i = group.inv(s2);
        mats.push(perm(&|x| group.mul(group.mul(s1, x), s2i)));
    }
    ModuleRep::new(gg.clone(), Arc::new(gg.whole()), field.clone(), mats)
}

/// Checks that the block is a nondegenerate, Delta E-projective summand of
/// (kG, B_1) via an explicit Theta with tr_{Delta E}^{G x G}(Theta) = e_B.
#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub extended_defect_order: usize,
    pub theta_symmetric: bool,
    pub theta_invariant: bool,
    pub trace_is_block_idempotent: bool,
    pub block_nondegenerate: bool,
    /// Theta restricted to the block is sigma-fixed, traces to 1 and gives an isometry
    pub explicit_projective: bool,
    /// symmetric Higman criterion at Delta E on the block
    pub generic_projective: bool,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.theta_symmetric
            && self.theta_invariant
            && self.trace_is_block_idempotent
            && self.block_nondegenerate
            && self.explicit_projective
            && self.generic_projective
    }
}

/// For each class in the support, an element c with C_E(c) a Sylow
/// 2-subgroup of C_G(c), inverted by some element of E when the class is
/// real; inverse classes get inverse representatives.
fn theta_representatives(group: &GroupTable, e: &Subgroup, support: &[usize]) -> Result<Vec<(usize, u32, Subgroup)>> {
    let classes = group.conjugacy_classes();
    let mut out: Vec<(usize, u32, Subgroup)> = Vec::new();
    for &i in support {
        if let Some((_, c, d)) = out.iter().find(|(j, _, _)| classes[*j].inverse_class == i && *j != i) {
            let ci = group.inv(*c);
            out.push((i, ci, d.clone()));
            continue;
        }
        let mut found = None;
        for &x in &classes[i].elements {
            let cent = group.centralizer(x);
            let d = group.intersection(e, &cent);
            if d.order() != group.sylow2_of(&cent).order() {
                continue;
            }
            if classes[i].is_real && !e.elements().iter().any(|&y| group.conj(y, x) == group.inv(x)) {
                continue;
            }
            found = Some((x, d));
            break;
        }
        let (x, d) = found.ok_or_else(|| Error::Internal(format!("no representative of class {i} adapted to E")))?;
        out.push((i, x, d));
    }
    Ok(out)
}

/// Theta = sum of alpha_i tr_{Delta D_i}^{Delta E}(d_i (x) d_i^-1) with d_i^2 = c_i,
/// checked against e_B, then the Higman isometry for B_1 on the block.
pub fn theta_check(group: &Arc<GroupTable>, field: &Field, block: &BlockInfo) -> Result<ThetaReport> {
    let e = block.extended_defect_group.clone().ok_or_else(|| Error::Precondition("block is not real".into()))?;
    let n = group.order();
    let reps = theta_representatives(group, &e, &block.support)?;
    let mut theta = Matrix::zeros(field, n, n);
    for (i, c, d) in &reps {
        let o = group.elem_order(*c) as u64;
        let di = group.pow(*c, o.div_ceil(2));
        debug_assert_eq!(group.mul(di, di), *c);
        let dinv = group.inv(di);
        let t = group.left_transversal(&e, d);
        for &x in &t.reps {
            let a = group.conj(x, di) as usize;
            let b = group.conj(x, dinv) as usize;
            theta.set(a, b, theta.get(a, b) ^ block.coeffs[*i]);
        }
    }
    let theta_symmetric = theta == theta.transpose();
    let gg = Arc::new(GroupTable::direct_product(group, group));
    let bim = bimodule(group, &gg, field)?;
    let de = gg.diagonal(n, &e);
    let theta_invariant = de.gens().iter().all(|&x| bim.act(x).mul(&theta) == theta.mul(bim.act(x)));
    // right multiplication by e_B
    let alg = ClassAlgebra::new(group.clone(), field);
    let eb = alg.to_group_algebra(&block.coeffs);
    let mut reb = Matrix::zeros(field, n, n);
    for x in 0..n as u32 {
        for (y, &c) in eb.iter().enumerate() {
            if c != 0 {
                let p = group.mul(x, y as u32) as usize;
                reb.set(p, x as usize, reb.get(p, x as usize) ^ c);
            }
        }
    }
    let whole = gg.whole();
    let trace_is_block_idempotent = theta_invariant && bim.rel_trace(&theta, &de, &whole) == reb;
    let w = reb.column_space();
    let block_mod = bim.submodule(&w)?;
    let gram = forms::restricted_gram(&Matrix::identity(field, n), &w);
    let block_nondegenerate = gram.is_invertible();
    if !block_nondegenerate {
        return Ok(ThetaReport {
            extended_defect_order: e.order(),
            theta_symmetric,
            theta_invariant,
            trace_is_block_idempotent,
            block_nondegenerate,
            explicit_projective: false,
            generic_projective: false,
        });
    }
    let base = GForm::nondegenerate(block_mod.clone(), gram)?;
    let alpha = coord_matrix(&w).mul(&reb).mul(&theta).mul(&inclusion_matrix(&w));
    let adj = base.adjoint()?;
    let one = Matrix::identity(field, w.dim());
    let mut explicit_projective = theta_invariant
        && adj.apply(&alpha) == alpha
        && block_mod.rel_trace(&alpha, &de, &whole) == one;
    if explicit_projective {
        let (ind, phi) = vertex::higman_isometry(&base, &alpha, &de)?;
        explicit_projective = forms::is_isometry(&base, &ind, &phi);
    }
    let generic_projective = vertex::form_is_h_projective(&base, &one, &de)?.is_some();
    Ok(ThetaReport {
        extended_defect_order: e.order(),
        theta_symmetric,
        theta_invariant,
        trace_is_block_idempotent,
        block_nondegenerate,
        explicit_projective,
        generic_projective,
    })
}

/// Symmetric vertices of sample modules against the extended defect group.
#[derive(Clone, Debug)]
pub struct VertexBlockReport {
    /// (sample index, every symmetric vertex is conjugate into E)
    pub contained: Vec<(usize, bool)>,
    /// a self-dual irreducible of the block with symmetric vertex E
    pub realised_by: Option<usize>,
}

pub fn verify_vertex_block(block: &BlockInfo, samples: &[ModuleRep], irreducibles: &[ModuleRep], seed: u64) -> Result<VertexBlockReport> {
    let e = block.extended_defect_group.clone().ok_or_else(|| Error::Precondition("block is not real".into()))?;
    if samples.is_empty() && irreducibles.is_empty() {
        return Err(Error::Precondition("no sample modules".into()));
    }
    let mut contained = Vec::new();
    for (i, m) in samples.iter().enumerate() {
        let g = m.group();
        let rep = vertex::analyze(m, seed)?;
        let ok = rep.symmetric_vertices.iter().all(|s| g.conj_into(&s.subgroup, &e).is_some());
        contained.push((i, ok));
    }
    let mut realised_by = None;
    for (i, m) in irreducibles.iter().enumerate() {
        if !rep::is_selfdual(m)? {
            continue;
        }
        let rep = vertex::analyze(m, seed)?;
        let g = m.group();
        if rep.symmetric_vertices.iter().any(|s| g.subgroup_conjugate(&s.subgroup, &e).is_some()) {
            realised_by = Some(i);
            break;
        }
    }
    Ok(VertexBlockReport { contained, realised_by })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{pims, simple_modules};
    use proptest::prelude::*;
    use rand::Rng;

    fn perm_group(n: usize, gens: &[Vec<usize>]) -> Arc<GroupTable> {
        Arc::new(GroupTable::from_permutations(n, gens).unwrap())
    }
    fn v4() -> Arc<GroupTable> {
        perm_group(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
    }
    fn c2() -> Arc<GroupTable> {
        perm_group(2, &[vec![1, 0]])
    }
    fn s3() -> Arc<GroupTable> {
        perm_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }
    fn d12() -> Arc<GroupTable> {
        perm_group(6, &[vec![1, 2, 3, 4, 5, 0], vec![0, 5, 4, 3, 2, 1]])
    }
    fn s4() -> Arc<GroupTable> {
        perm_group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
    }
    /// C3 x| C4 with the generator of C4 inverting C3.
    fn c3_c4() -> Arc<GroupTable> {
        perm_group(7, &[vec![1, 2, 0, 3, 4, 5, 6], vec![0, 2, 1, 4, 5, 6, 3]])
    }
    fn gf4() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn two_groups_have_one_block() {
        let f = gf4();
        for g in [c2(), v4()] {
            let b = block_decomposition(&g, &f, 1).unwrap();
            assert_eq!(b.len(), 1);
            assert!(b[0].principal && b[0].real);
            assert_eq!(b[0].defect_group.order(), g.order());
            assert_eq!(b[0].extended_defect_group.as_ref().unwrap().order(), g.order());
        }
    }

    #[test]
    fn s3_blocks_and_defect_groups() {
        let g = s3();
        let f = gf4();
        let b = block_decomposition(&g, &f, 1).unwrap();
        assert_eq!(b.len(), 2);
        assert!(verify_blocks(&g, &f, &b));
        assert!(b.iter().all(|x| x.real));
        assert_eq!(b[0].defect_group.order(), 2);
        assert_eq!(b[0].extended_defect_group.as_ref().unwrap().order(), 2);
        assert_eq!(b[1].defect_group.order(), 1);
        assert_eq!(b[1].extended_defect_group.as_ref().unwrap().order(), 2);
        let sims = simple_modules(&g, &f, 1).unwrap();
        for m in &sims {
            let blk = block_of_module(m, &b).unwrap();
            assert_eq!(blk.principal, m.dim() == 1);
        }
    }

    #[test]
    fn number_of_blocks_matches_direct_count() {
        let f = gf4();
        for g in [s3(), d12(), s4(), c3_c4()] {
            let b = block_decomposition(&g, &f, 2).unwrap();
            assert!(verify_blocks(&g, &f, &b));
            // every simple module lies in exactly one block
            for m in simple_modules(&g, &f, 1).unwrap() {
                let id = Matrix::identity(&f, m.dim());
                assert_eq!(b.iter().filter(|x| block_action(&m, x) == id).count(), 1);
            }
            for x in &b {
                let e = x.extended_defect_group.as_ref().unwrap();
                assert!(x.defect_group.is_subgroup_of(e));
                assert!(e.order() == x.defect_group.order() || e.order() == 2 * x.defect_group.order());
                if x.principal {
                    assert_eq!(e.order(), g.two_part());
                    assert_eq!(x.defect_group.order(), g.two_part());
                }
            }
        }
    }

    #[test]
    fn c3_c4_pim_is_not_quadratic() {
        let g = c3_c4();
        assert_eq!(g.order(), 12);
        let f = gf4();
        let b = block_decomposition(&g, &f, 1).unwrap();
        assert_eq!(b.len(), 2);
        let m = simple_modules(&g, &f, 1).unwrap().into_iter().find(|m| m.dim() == 2).unwrap();
        let r = quadratic_type_pim(&m, 1).unwrap();
        assert_eq!(r.tests.len(), 1);
        assert!(!r.quadratic);
        assert!(r.routes_agree);
        let p = projective_cover(&m, 1).unwrap().unwrap();
        let inv = forms::invariant_forms(&p.module);
        assert!(inv.symmetric.iter().all(|x| !x.is_invertible()));
    }

    #[test]
    fn quadratic_routes_agree_on_s4() {
        let g = s4();
        let f = gf4();
        for m in simple_modules(&g, &f, 1).unwrap() {
            if m.dim() == 1 {
                continue;
            }
            let r = quadratic_type_pim(&m, 1).unwrap();
            assert!(r.routes_agree);
            assert!(r.quadratic);
        }
    }

    #[test]
    fn b1_on_projective_covers() {
        let f = gf4();
        for g in [s3(), s4(), d12()] {
            let mut one = vec![0; g.order()];
            one[0] = 1;
            for p in pims(&g, &f, 1).unwrap() {
                if !rep::is_selfdual(&p.module).unwrap() {
                    continue;
                }
                let w = regular_component(&p.module, &one).unwrap();
                assert_eq!(w.is_some(), p.trivial_head);
            }
        }
    }

    #[test]
    fn theta_construction_recovers_block_idempotents() {
        let f = gf4();
        for g in [c2(), s3(), d12()] {
            for b in block_decomposition(&g, &f, 1).unwrap() {
                let r = theta_check(&g, &f, &b).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn central_characters_are_multiplicative(seed in any::<u64>()) {
            let g = d12();
            let f = gf4();
            let alg = ClassAlgebra::new(g.clone(), &f);
            let blocks = block_decomposition(&g, &f, 1).unwrap();
            let mut r = rng(seed);
            let z1: Vec<Fe> = (0..alg.len()).map(|_| r.gen_range(0..4)).collect();
            let z2: Vec<Fe> = (0..alg.len()).map(|_| r.gen_range(0..4)).collect();
            let z = alg.mul(&z1, &z2);
            for b in &blocks {
                prop_assert_eq!(b.central_character_of(&f, &z), f.mul(b.central_character_of(&f, &z1), b.central_character_of(&f, &z2)));
                prop_assert_eq!(b.central_character_of(&f, &alg.one()), 1);
            }
        }

        #[test]
        fn q_t_is_additive(seed in any::<u64>()) {
            let g = s4();
            let f = gf4();
            let m = simple_modules(&g, &f, 1).unwrap().into_iter().find(|m| m.dim() == 2).unwrap();
            let b = GForm::nondegenerate(m.clone(), forms::symmetric_form(&m).unwrap()).unwrap();
            let mut r = rng(seed);
            let x: Vec<Fe> = (0..2).map(|_| r.gen_range(0..4)).collect();
            let y: Vec<Fe> = (0..2).map(|_| r.gen_range(0..4)).collect();
            let s: Vec<Fe> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
            for t in g.involutions() {
                prop_assert_eq!(q_t(&b, t, &s), q_t(&b, t, &x) ^ q_t(&b, t, &y));
            }
        }
    }
}
