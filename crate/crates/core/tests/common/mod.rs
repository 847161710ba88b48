//! Independent oracles: hand-written action matrices and brute-force enumeration over GF(2).
#![allow(dead_code)]

use std::collections::HashSet;

use relhom::exactla::{Field, Matrix};

pub fn gf2() -> Field {
    Field::new(2).unwrap()
}

pub fn mat(rows: &[&[i64]]) -> Matrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    Matrix::from_rows(gf2(), &rows).unwrap()
}

pub fn mat_shaped(r: usize, c: usize, rows: &[&[i64]]) -> Matrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    Matrix::from_rows_shaped(gf2(), r, c, &rows).unwrap()
}

/// A module given only by its action matrices, one per algebra basis element.
#[derive(Clone)]
pub struct RawModule {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

/// Every `target x source` matrix over GF(2) that intertwines the actions.
pub fn all_homs(src: &RawModule, tgt: &RawModule) -> Vec<Matrix> {
    let (r, c) = (tgt.dim, src.dim);
    let f = gf2();
    let mut out = Vec::new();
    assert!(r * c <= 20, "enumeration too large");
    for code in 0u64..(1 << (r * c)) {
        let m = Matrix::from_fn(f, r, c, |i, j| ((code >> (i * c + j)) & 1) as u32);
        if src.action.iter().zip(&tgt.action).all(|(a, b)| m.mul(a) == b.mul(&m)) {
            out.push(m);
        }
    }
    out
}

/// `dim Ext^n` from a hand-written resolution `P_0 <- P_1 <- ...`, counting
/// cocycles and coboundaries element by element. `diffs[i]` is `d_{i+1}: P_{i+1} -> P_i`.
pub fn brute_ext(resolution: &[RawModule], diffs: &[Matrix], m: &RawModule, n: usize) -> usize {
    if n >= resolution.len() {
        return 0;
    }
    let pn = &resolution[n];
    let homs = all_homs(pn, m);
    let cocycles: Vec<&Matrix> = match diffs.get(n) {
        Some(d) => homs.iter().filter(|phi| phi.mul(d).is_zero()).collect(),
        None => homs.iter().collect(),
    };
    let coboundaries: HashSet<Vec<u32>> = if n == 0 {
        [vec![0; m.dim * pn.dim]].into_iter().collect()
    } else {
        all_homs(&resolution[n - 1], m).iter().map(|psi| psi.mul(&diffs[n - 1]).entries().to_vec()).collect()
    };
    let z = cocycles.len();
    let b = coboundaries.len();
    assert_eq!(z % b, 0);
    (z / b).trailing_zeros() as usize
}

/// k[x]/(x^2) on the basis (1, x).
pub mod dual_numbers {
    use super::*;

    pub fn regular() -> RawModule {
        RawModule { dim: 2, action: vec![mat(&[&[1, 0], &[0, 1]]), mat(&[&[0, 0], &[1, 0]])] }
    }

    pub fn trivial() -> RawModule {
        RawModule { dim: 1, action: vec![mat(&[&[1]]), mat(&[&[0]])] }
    }

    /// `... -> A --x--> A --x--> A -> k`, truncated to `len` terms.
    pub fn periodic_resolution(len: usize) -> (Vec<RawModule>, Vec<Matrix>) {
        let x = mat(&[&[0, 0], &[1, 0]]);
        (vec![regular(); len], vec![x; len.saturating_sub(1)])
    }
}

/// The A2 quiver `0 -a-> 1` on the basis (e0, e1, a).
pub mod a2 {
    use super::*;

    pub fn p1() -> RawModule {
        // basis e0, a
        RawModule {
            dim: 2,
            action: vec![mat(&[&[1, 0], &[0, 0]]), mat(&[&[0, 0], &[0, 1]]), mat(&[&[0, 0], &[1, 0]])],
        }
    }

    pub fn p2() -> RawModule {
        RawModule { dim: 1, action: vec![mat(&[&[0]]), mat(&[&[1]]), mat(&[&[0]])] }
    }

    pub fn s1() -> RawModule {
        RawModule { dim: 1, action: vec![mat(&[&[1]]), mat(&[&[0]]), mat(&[&[0]])] }
    }

    pub fn s2() -> RawModule {
        p2()
    }

    /// `0 -> P(2) -> P(1) -> S(1) -> 0`.
    pub fn resolution_s1() -> (Vec<RawModule>, Vec<Matrix>) {
        (vec![p1(), p2()], vec![mat(&[&[0], &[1]])])
    }
}
