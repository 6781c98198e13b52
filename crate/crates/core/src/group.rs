//! Finite groups as multiplication tables, subgroups, conjugacy, 2-subgroups.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::{Error, Result};

/// Group on ids 0..n with identity 0.
pub struct GroupTable {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    gens: Vec<u32>,
    perms: Option<(usize, Vec<Vec<u16>>)>,
    classes: OnceCell<Vec<ConjClass>>,
    class_of: OnceCell<Vec<usize>>,
    lattice: OnceCell<TwoLattice>,
}

impl core::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GroupTable(order {}, {} generators)", self.n, self.gens.len())
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: u32,
    pub elements: Vec<u32>,
    pub element_order: u32,
    pub is_real: bool,
    /// elements of odd order
    pub is_2regular: bool,
    pub inverse_class: usize,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Subgroup as a sorted element list plus generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, o: &Self) -> bool {
        self.elements == o.elements
    }
}
impl Eq for Subgroup {}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, o: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, o: &Self) -> core::cmp::Ordering {
        self.elements.len().cmp(&o.elements.len()).then_with(|| self.elements.cmp(&o.elements))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }
    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
    pub fn position(&self, x: u32) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
    pub fn is_subgroup_of(&self, o: &Subgroup) -> bool {
        self.elements.iter().all(|&x| o.contains(x))
    }
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Left coset representatives of H in K, the smallest id in each coset.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub reps: Vec<u32>,
    /// coset index per element id of G, `u32::MAX` outside K
    pub coset_of: Vec<u32>,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub rep: u32,
    pub elements: Vec<u32>,
}

/// A G-conjugacy class of 2-subgroups, represented inside the Sylow subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    /// number of G-conjugates
    pub size: usize,
}

/// All subgroups of a fixed Sylow 2-subgroup and their fusion classes.
#[derive(Clone, Debug)]
pub struct TwoLattice {
    pub sylow: Subgroup,
    pub subgroups: Vec<Subgroup>,
    pub class_of: Vec<usize>,
    pub classes: Vec<SubgroupClass>,
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    // (ab)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

impl GroupTable {
    /// Closure of permutation generators on points 0..degree.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<GroupTable> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(Error::Parse(format!("bad permutation degree {degree}")));
        }
        let mut gp: Vec<Vec<u16>> = Vec::new();
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || core::mem::replace(&mut seen[x], true)) {
                return Err(Error::Parse(format!("not a permutation of {degree} points: {g:?}")));
            }
            gp.push(g.iter().map(|&x| x as u16).collect());
        }
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut index: BTreeMap<Vec<u16>, u32> = BTreeMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gp {
                let p = compose(&elems[i], s);
                if !index.contains_key(&p) {
                    if elems.len() >= 1 << 20 {
                        return Err(Error::Bound("group order above 2^20".into()));
                    }
                    index.insert(p.clone(), elems.len() as u32);
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])];
            }
        }
        let mut gens_ids = Vec::new();
        for s in &gp {
            let id = index[s];
            if id != 0 && !gens_ids.contains(&id) {
                gens_ids.push(id);
            }
        }
        Ok(GroupTable::assemble(n, table, gens_ids, Some((degree, elems))))
    }

    /// From a full Cayley table with identity at id 0. Generators are chosen
    /// greedily: the smallest id outside the subgroup generated so far.
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("Cayley table must be square and nonempty".into()));
        }
        let flat: Vec<u32> = table.concat();
        if flat.iter().any(|&x| x as usize >= n) {
            return Err(Error::Parse("Cayley table entry out of range".into()));
        }
        for a in 0..n {
            if flat[a] as usize != a || flat[a * n] as usize != a {
                return Err(Error::Parse("id 0 is not the identity".into()));
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                if core::mem::replace(&mut row[flat[a * n + b] as usize], true)
                    || core::mem::replace(&mut col[flat[b * n + a] as usize], true)
                {
                    return Err(Error::Parse("Cayley table is not a Latin square".into()));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b] as usize;
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c] as usize] {
                        return Err(Error::Parse("Cayley table is not associative".into()));
                    }
                }
            }
        }
        let mut g = GroupTable::assemble(n, flat, Vec::new(), None);
        let mut gens = Vec::new();
        let mut h = g.closure(&[]);
        for x in 0..n as u32 {
            if !h.contains(x) {
                gens.push(x);
                h = g.closure(&gens);
            }
        }
        g.gens = gens;
        Ok(g)
    }

    fn assemble(n: usize, table: Vec<u32>, gens: Vec<u32>, perms: Option<(usize, Vec<Vec<u16>>)>) -> GroupTable {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut orders = vec![1u32; n];
        for (a, o) in orders.iter_mut().enumerate() {
            let mut x = a;
            while x != 0 {
                x = table[x * n + a] as usize;
                *o += 1;
            }
        }
        GroupTable {
            n,
            table,
            inv,
            orders,
            gens,
            perms,
            classes: OnceCell::new(),
            class_of: OnceCell::new(),
            lattice: OnceCell::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    /// g x g^-1
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }
    pub fn elem_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }
    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let k = k % self.orders[a as usize] as u64;
        (0..k).fold(0, |x, _| self.mul(x, a))
    }
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }
    /// Degree and element images, when built from permutations.
    pub fn permutations(&self) -> Option<(usize, &[Vec<u16>])> {
        self.perms.as_ref().map(|(d, p)| (*d, p.as_slice()))
    }

    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.orders.iter().fold(1u64, |l, &o| l / gcd(l, o as u64) * o as u64)
    }

    /// 2-part of the order.
    pub fn two_part(&self) -> usize {
        1 << self.n.trailing_zeros()
    }

    pub fn is_two_element(&self, a: u32) -> bool {
        self.orders[a as usize].is_power_of_two()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.n as u32).collect(), gens: self.gens.clone() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elements: vec![0], gens: Vec::new() }
    }

    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut elems = vec![0u32];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        let gens = gens.iter().copied().filter(|&g| g != 0).collect();
        Subgroup { elements: elems, gens }
    }

    /// Subgroup from a closed element set; generators chosen greedily.
    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Subgroup {
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        let mut gens = Vec::new();
        let mut h = self.closure(&[]);
        for &x in &els {
            if !h.contains(x) {
                gens.push(x);
                h = self.closure(&gens);
            }
        }
        debug_assert_eq!(h.elements, els, "element set is not a subgroup");
        h
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        self.closure(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let els: Vec<u32> = a.elements.iter().copied().filter(|&x| b.contains(x)).collect();
        self.subgroup_from_elements(&els)
    }

    /// g H g^-1
    pub fn conjugate(&self, h: &Subgroup, g: u32) -> Subgroup {
        let mut elements: Vec<u32> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements, gens: h.gens.iter().map(|&x| self.conj(g, x)).collect() }
    }

    pub fn centralizer_in(&self, k: &Subgroup, x: u32) -> Subgroup {
        let els: Vec<u32> = k.elements.iter().copied().filter(|&g| self.mul(g, x) == self.mul(x, g)).collect();
        self.subgroup_from_elements(&els)
    }

    pub fn centralizer(&self, x: u32) -> Subgroup {
        self.centralizer_in(&self.whole(), x)
    }

    /// { g : g x g^-1 in {x, x^-1} }
    pub fn extended_centralizer_in(&self, k: &Subgroup, x: u32) -> Subgroup {
        let xi = self.inv(x);
        let els: Vec<u32> = k
            .elements
            .iter()
            .copied()
            .filter(|&g| {
                let c = self.conj(g, x);
                c == x || c == xi
            })
            .collect();
        self.subgroup_from_elements(&els)
    }

    pub fn extended_centralizer(&self, x: u32) -> Subgroup {
        self.extended_centralizer_in(&self.whole(), x)
    }

    pub fn normalizer_in(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let els: Vec<u32> = k
            .elements
            .iter()
            .copied()
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        self.subgroup_from_elements(&els)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), h)
    }

    /// Sylow 2-subgroup of K, grown by adjoining 2-elements of N_K(P) \ P.
    pub fn sylow2_of(&self, k: &Subgroup) -> Subgroup {
        let target = 1usize << k.order().trailing_zeros();
        let mut p = self.trivial();
        while p.order() < target {
            let x = k
                .elements
                .iter()
                .copied()
                .find(|&x| {
                    !p.contains(x)
                        && self.is_two_element(x)
                        && p.gens.iter().all(|&y| p.contains(self.conj(x, y)))
                })
                .expect("a proper 2-subgroup has a 2-element in its normalizer");
            let mut gens = p.gens.clone();
            gens.push(x);
            p = self.closure(&gens);
        }
        p
    }

    pub fn sylow2(&self) -> Subgroup {
        self.sylow2_of(&self.whole())
    }

    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        self.classes.get_or_init(|| {
            let mut class_of = vec![usize::MAX; self.n];
            let mut classes: Vec<ConjClass> = Vec::new();
            for x in 0..self.n as u32 {
                if class_of[x as usize] != usize::MAX {
                    continue;
                }
                let mut els: Vec<u32> = (0..self.n as u32).map(|g| self.conj(g, x)).collect();
                els.sort_unstable();
                els.dedup();
                for &y in &els {
                    class_of[y as usize] = classes.len();
                }
                classes.push(ConjClass {
                    rep: x,
                    element_order: self.orders[x as usize],
                    is_2regular: self.orders[x as usize] % 2 == 1,
                    elements: els,
                    is_real: false,
                    inverse_class: 0,
                });
            }
            for c in classes.iter_mut() {
                c.inverse_class = class_of[self.inv(c.rep) as usize];
                c.is_real = c.elements.contains(&self.inv(c.rep));
            }
            let _ = self.class_of.set(class_of);
            classes
        })
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.conjugacy_classes();
        self.class_of.get().unwrap()[x as usize]
    }

    pub fn involutions(&self) -> Vec<u32> {
        (1..self.n as u32).filter(|&x| self.orders[x as usize] == 2).collect()
    }

    /// Left transversal of H in K (H <= K).
    pub fn left_transversal(&self, k: &Subgroup, h: &Subgroup) -> Transversal {
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for &x in &k.elements {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            for &y in &h.elements {
                coset_of[self.mul(x, y) as usize] = reps.len() as u32;
            }
            reps.push(x);
        }
        Transversal { reps, coset_of }
    }

    /// K \ G / H, representatives are the smallest ids.
    pub fn double_cosets(&self, k: &Subgroup, h: &Subgroup) -> Vec<DoubleCoset> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for g in 0..self.n as u32 {
            if seen[g as usize] {
                continue;
            }
            let mut els = Vec::new();
            for &a in &k.elements {
                let ag = self.mul(a, g);
                for &b in &h.elements {
                    let x = self.mul(ag, b);
                    if !seen[x as usize] {
                        seen[x as usize] = true;
                        els.push(x);
                    }
                }
            }
            els.sort_unstable();
            out.push(DoubleCoset { rep: g, elements: els });
        }
        out
    }

    /// Some g with g A g^-1 = B.
    pub fn subgroup_conjugate(&self, a: &Subgroup, b: &Subgroup) -> Option<u32> {
        if a.order() != b.order() {
            return None;
        }
        self.conj_into(a, b)
    }

    /// Some g with g A g^-1 contained in B.
    pub fn conj_into(&self, a: &Subgroup, b: &Subgroup) -> Option<u32> {
        if b.order() % a.order() != 0 {
            return None;
        }
        (0..self.n as u32).find(|&g| a.gens.iter().all(|&x| b.contains(self.conj(g, x))))
    }

    /// Smallest sorted element list among the G-conjugates of H.
    pub fn conjugacy_key(&self, h: &Subgroup) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for g in 0..self.n as u32 {
            let mut els: Vec<u32> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
            els.sort_unstable();
            if best.as_ref().is_none_or(|b| els < *b) {
                best = Some(els);
            }
        }
        best.unwrap()
    }

    /// All subgroups of K, by joining with cyclic subgroups upward from 1.
    pub fn all_subgroups_of(&self, k: &Subgroup, limit: usize) -> Result<Vec<Subgroup>> {
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut list: Vec<Subgroup> = vec![self.trivial()];
        found.insert(vec![0]);
        let mut i = 0;
        while i < list.len() {
            let a = list[i].clone();
            for &x in &k.elements {
                if a.contains(x) {
                    continue;
                }
                let mut gens = a.gens.clone();
                gens.push(x);
                let b = self.closure(&gens);
                if found.insert(b.elements.clone()) {
                    list.push(b);
                    if list.len() > limit {
                        return Err(Error::Bound(format!("more than {limit} subgroups")));
                    }
                }
            }
            i += 1;
        }
        list.sort();
        Ok(list)
    }

    /// Subgroups of the Sylow 2-subgroup and their G-classes. Errors when the
    /// Sylow order exceeds `bound`.
    pub fn two_lattice(&self, bound: usize) -> Result<&TwoLattice> {
        if self.two_part() > bound {
            return Err(Error::Bound(format!("Sylow 2-subgroup of order {} exceeds {bound}", self.two_part())));
        }
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let sylow = self.sylow2();
        let subgroups = self.all_subgroups_of(&sylow, 4096)?;
        let mut key_index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let mut class_of = Vec::new();
        for s in &subgroups {
            let key = self.conjugacy_key(s);
            let idx = *key_index.entry(key).or_insert_with(|| {
                let size = self.n / self.normalizer(s).order();
                classes.push(SubgroupClass { rep: s.clone(), size });
                classes.len() - 1
            });
            class_of.push(idx);
        }
        let _ = self.lattice.set(TwoLattice { sylow, subgroups, class_of, classes });
        Ok(self.lattice.get().unwrap())
    }

    /// Representatives of the G-classes of 2-subgroups.
    pub fn two_subgroups_up_to_conjugacy(&self, bound: usize) -> Result<Vec<SubgroupClass>> {
        Ok(self.two_lattice(bound)?.classes.clone())
    }

    /// G x H with ids a * |H| + b.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (x1, x2) = ((x / nb) as u32, (x % nb) as u32);
            for y in 0..n {
                let (y1, y2) = ((y / nb) as u32, (y % nb) as u32);
                table[x * n + y] = a.mul(x1, y1) * nb as u32 + b.mul(x2, y2);
            }
        }
        let mut gens: Vec<u32> = a.gens.iter().map(|&g| g * nb as u32).collect();
        gens.extend(b.gens.iter().copied());
        GroupTable::assemble(n, table, gens, None)
    }

    /// { (h, h) } in G x G, for a subgroup H of the first factor of `self = G x G`.
    pub fn diagonal(&self, base_order: usize, h: &Subgroup) -> Subgroup {
        let els: Vec<u32> = h.elements.iter().map(|&x| x * base_order as u32 + x).collect();
        let gens: Vec<u32> = h.gens.iter().map(|&x| x * base_order as u32 + x).collect();
        let mut elements = els;
        elements.sort_unstable();
        Subgroup { elements, gens }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> GroupTable {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        GroupTable::from_permutations(n, &[t, c]).unwrap()
    }

    fn dihedral(n: usize) -> GroupTable {
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        GroupTable::from_permutations(n, &[r, s]).unwrap()
    }

    // every subgroup of G by brute-force closure of all element pairs, then joins
    fn brute_subgroups(g: &GroupTable) -> Vec<Vec<u32>> {
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        let n = g.order() as u32;
        for a in 0..n {
            for b in 0..n {
                found.insert(g.closure(&[a, b]).elements);
            }
        }
        loop {
            let cur: Vec<Vec<u32>> = found.iter().cloned().collect();
            let before = found.len();
            for x in &cur {
                for y in &cur {
                    let mut gens = x.clone();
                    gens.extend(y);
                    found.insert(g.closure(&gens).elements);
                }
            }
            if found.len() == before {
                break;
            }
        }
        found.into_iter().collect()
    }

    #[test]
    fn orders_and_exponents() {
        assert_eq!(sym(4).order(), 24);
        assert_eq!(sym(5).order(), 120);
        assert_eq!(sym(5).exponent(), 60);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(dihedral(6).exponent(), 6);
    }

    #[test]
    fn table_roundtrip_and_greedy_gens() {
        let g = sym(3);
        let t: Vec<Vec<u32>> = (0..6).map(|a| (0..6).map(|b| g.mul(a, b)).collect()).collect();
        let h = GroupTable::from_table(t).unwrap();
        assert_eq!(h.closure(h.gens()).order(), 6);
        assert_eq!(h.gens()[0], 1);
        let mut bad: Vec<Vec<u32>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        bad[1][1] = 1;
        assert!(GroupTable::from_table(bad).is_err());
    }

    #[test]
    fn class_equation() {
        for g in [sym(4), sym(5), dihedral(6), dihedral(7)] {
            let cl = g.conjugacy_classes();
            assert_eq!(cl.iter().map(|c| c.size()).sum::<usize>(), g.order());
            for c in cl {
                assert_eq!(g.order() % c.size(), 0);
                assert_eq!(g.centralizer(c.rep).order() * c.size(), g.order());
            }
            assert_eq!(cl[0].rep, 0);
        }
        assert_eq!(sym(4).conjugacy_classes().len(), 5);
        assert_eq!(sym(5).conjugacy_classes().len(), 7);
        assert_eq!(dihedral(6).conjugacy_classes().len(), 6);
        // all classes of symmetric groups are real
        assert!(sym(5).conjugacy_classes().iter().all(|c| c.is_real));
    }

    #[test]
    fn sylow_orders() {
        for (g, o) in [(sym(4), 8), (sym(5), 8), (dihedral(6), 4), (dihedral(7), 2), (sym(3), 2)] {
            let p = g.sylow2();
            assert_eq!(p.order(), o);
            assert!(p.elements().iter().all(|&x| g.is_two_element(x)));
        }
    }

    #[test]
    fn two_subgroup_classes_match_brute_force() {
        for g in [sym(4), dihedral(6), dihedral(4), sym(3)] {
            let lat = g.two_lattice(64).unwrap();
            let all = brute_subgroups(&g);
            let twos: Vec<&Vec<u32>> = all.iter().filter(|s| s.len().is_power_of_two()).collect();
            // fuse by brute-force conjugation
            let mut keys = BTreeSet::new();
            for s in &twos {
                let sub = g.subgroup_from_elements(s);
                keys.insert(g.conjugacy_key(&sub));
            }
            assert_eq!(lat.classes.len(), keys.len());
            let total: usize = lat.classes.iter().map(|c| c.size).sum();
            assert_eq!(total, twos.len());
        }
        // D12: 1, three classes of order 2, two of order 4 (a cyclic C2xC2 split? no: V4 classes)
        let d12 = dihedral(6);
        let lat = d12.two_lattice(64).unwrap();
        let order2 = lat.classes.iter().filter(|c| c.rep.order() == 2).count();
        assert_eq!(order2, 3);
    }

    #[test]
    fn double_coset_sizes() {
        let g = sym(4);
        let p = g.sylow2();
        let dc = g.double_cosets(&p, &p);
        assert_eq!(dc.iter().map(|d| d.elements.len()).sum::<usize>(), 24);
        for d in &dc {
            let k = g.intersection(&p, &g.conjugate(&p, d.rep));
            assert_eq!(d.elements.len(), p.order() * p.order() / k.order());
        }
    }

    #[test]
    fn transversal_and_conjugation() {
        let g = sym(4);
        let p = g.sylow2();
        let t = g.left_transversal(&g.whole(), &p);
        assert_eq!(t.len(), 3);
        assert_eq!(t.reps[0], 0);
        let q = g.conjugate(&p, 5);
        let x = g.subgroup_conjugate(&p, &q).unwrap();
        assert_eq!(g.conjugate(&p, x), q);
    }

    #[test]
    fn direct_product_diag() {
        let g = sym(3);
        let gg = GroupTable::direct_product(&g, &g);
        assert_eq!(gg.order(), 36);
        assert_eq!(gg.closure(gg.gens()).order(), 36);
        let d = gg.diagonal(6, &g.whole());
        assert_eq!(gg.closure(d.gens()).elements(), d.elements());
    }
}
