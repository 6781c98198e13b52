//! Specht modules S^lambda of S_n inside the tabloid permutation module,
//! and D^lambda = S / (S meet S-perp) with the induced form.

use std::collections::HashMap;
use std::sync::Arc;

use symvert::forms::restricted_gram;
use symvert::{Fe, Field, GroupTable, Matrix, ModuleRep, Subspace};

use crate::{CliError, Result};

pub struct Specht {
    pub partition: Vec<usize>,
    /// the tabloid permutation module M^lambda
    pub tabloids: ModuleRep,
    pub specht_space: Subspace,
    pub simple: ModuleRep,
    /// Gram of the form on D^lambda induced by the standard form on M^lambda
    pub form: Matrix,
    /// image of e_T in D^lambda for the initial tableau T
    pub tableau_vector: Vec<Fe>,
    /// the involution reversing each row of T
    pub row_reversal: u32,
    /// B(t e_T, e_T) computed in M^lambda
    pub b_te_e: Fe,
}

/// All set partitions of 0..n into rows of the given sizes, as row labels.
fn tabloids(n: usize, shape: &[usize]) -> Vec<Vec<u8>> {
    fn rec(i: usize, n: usize, left: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..left.len() {
            if left[r] > 0 {
                left[r] -= 1;
                cur.push(r as u8);
                rec(i + 1, n, left, cur, out);
                cur.pop();
                left[r] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut shape.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Tableaux of the shape as rows of points, all n! fillings.
fn tableaux(n: usize, shape: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n)
        .into_iter()
        .map(|p| {
            let mut rows = Vec::new();
            let mut i = 0;
            for &len in shape {
                rows.push(p[i..i + len].to_vec());
                i += len;
            }
            rows
        })
        .collect()
}

fn is_standard(t: &[Vec<usize>]) -> bool {
    t.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
        && (1..t.len()).all(|i| (0..t[i].len()).all(|j| t[i - 1][j] < t[i][j]))
}

/// Polytabloid: sum over the column stabiliser of the tabloids of sigma T.
fn polytabloid(t: &[Vec<usize>], n: usize, index: &HashMap<Vec<u8>, usize>, dim: usize) -> Vec<Fe> {
    let ncols = t[0].len();
    let cols: Vec<Vec<usize>> = (0..ncols).map(|j| t.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect();
    // row label of each point in T
    let mut row_of = vec![0u8; n];
    for (r, row) in t.iter().enumerate() {
        for &x in row {
            row_of[x] = r as u8;
        }
    }
    let mut v = vec![0; dim];
    // every product of column permutations: permute the row labels within each column
    let mut states: Vec<Vec<u8>> = vec![row_of];
    for col in &cols {
        let mut next = Vec::new();
        let labels: Vec<u8> = col.iter().map(|&x| states[0][x]).collect();
        let orders = permutations_of(&labels);
        for s in &states {
            for o in &orders {
                let mut s2 = s.clone();
                for (k, &x) in col.iter().enumerate() {
                    s2[x] = o[k];
                }
                next.push(s2);
            }
        }
        states = next;
    }
    for s in states {
        v[index[&s]] ^= 1;
    }
    v
}

fn permutations_of(xs: &[u8]) -> Vec<Vec<u8>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// S^lambda and D^lambda for S_n given as permutations of 0..n.
pub fn specht(group: &Arc<GroupTable>, field: &Field, partition: &[usize]) -> Result<Specht> {
    let (n, perms) = group.permutations().ok_or_else(|| CliError::Parse("Specht modules need a permutation group".into()))?;
    if partition.iter().sum::<usize>() != n || partition.windows(2).any(|w| w[0] < w[1]) || partition.is_empty() {
        return Err(CliError::Parse(format!("{partition:?} is not a partition of {n}")));
    }
    let tabs = tabloids(n, partition);
    let index: HashMap<Vec<u8>, usize> = tabs.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let dim = tabs.len();
    let act = |p: &[u16], t: &[u8]| {
        let mut s = vec![0u8; n];
        for x in 0..n {
            s[p[x] as usize] = t[x];
        }
        s
    };
    let mats: Vec<Matrix> = group
        .gens()
        .iter()
        .map(|&g| {
            let mut m = Matrix::zeros(field, dim, dim);
            for (j, t) in tabs.iter().enumerate() {
                m.set(index[&act(&perms[g as usize], t)], j, 1);
            }
            m
        })
        .collect();
    let tabloids = ModuleRep::new(group.clone(), Arc::new(group.whole()), field.clone(), mats)?;
    let standard: Vec<Vec<Fe>> = tableaux(n, partition)
        .into_iter()
        .filter(|t| is_standard(t))
        .map(|t| polytabloid(&t, n, &index, dim))
        .collect();
    let w = Subspace::from_rows(field, dim, &standard);
    let s = tabloids.submodule(&w)?;
    let gs = restricted_gram(&Matrix::identity(field, dim), &w);
    let rad = Subspace::from_rows(field, w.dim(), &gs.kernel());
    let (simple, proj) = s.quotient(&rad)?;
    // lifts of the quotient basis: unit vectors at the complement pivots
    let comp = rad.complement();
    let mut lift = Matrix::zeros(field, w.dim(), simple.dim());
    for (i, &c) in comp.pivots().iter().enumerate() {
        lift.set(c, i, 1);
    }
    let form = lift.transpose().mul(&gs).mul(&lift);
    // initial tableau and its row reversal
    let mut t0 = Vec::new();
    let mut next = 0;
    for &len in partition {
        t0.push((next..next + len).collect::<Vec<usize>>());
        next += len;
    }
    let mut rev = vec![0u16; n];
    for row in &t0 {
        for (i, &x) in row.iter().enumerate() {
            rev[x] = row[row.len() - 1 - i] as u16;
        }
    }
    let row_reversal = (0..group.order() as u32)
        .find(|&g| perms[g as usize] == rev)
        .ok_or_else(|| CliError::Parse("row reversal outside the group".into()))?;
    let et = polytabloid(&t0, n, &index, dim);
    let tet = tabloids.act(row_reversal).mul_vec(&et);
    let b_te_e = field.dot(&tet, &et);
    let coords = w.coords(&et).ok_or_else(|| CliError::Core(symvert::Error::Internal("polytabloid outside the Specht module".into())))?;
    let tableau_vector = proj.mul_vec(&coords);
    Ok(Specht { partition: partition.to_vec(), tabloids, specht_space: w, simple, form, tableau_vector, row_reversal, b_te_e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite;

    #[test]
    fn specht_dimensions() {
        let g = suite::group("s5").unwrap();
        let f = Field::new(2).unwrap();
        let s = specht(&g, &f, &[3, 2]).unwrap();
        assert_eq!(s.specht_space.dim(), 5);
        assert_eq!(s.simple.dim(), 4);
        assert_eq!(s.b_te_e, 1);
        let s41 = specht(&g, &f, &[4, 1]).unwrap();
        assert_eq!(s41.specht_space.dim(), 4);
        assert_eq!(s41.simple.dim(), 4);
        let g4 = suite::group("s4").unwrap();
        let s31 = specht(&g4, &f, &[3, 1]).unwrap();
        assert_eq!(s31.simple.dim(), 2);
        assert_eq!(s31.b_te_e, 1);
    }

    #[test]
    fn induced_form_is_invariant_and_symplectic() {
        let g = suite::group("s5").unwrap();
        let f = Field::new(2).unwrap();
        let s = specht(&g, &f, &[3, 2]).unwrap();
        let b = symvert::forms::GForm::nondegenerate(s.simple.clone(), s.form.clone()).unwrap();
        assert!(b.is_symplectic());
        let q = b.eval(&s.simple.act(s.row_reversal).mul_vec(&s.tableau_vector), &s.tableau_vector);
        assert_eq!(q, 1);
    }
}
