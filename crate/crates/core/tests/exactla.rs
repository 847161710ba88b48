use proptest::prelude::*;
use relhom::exactla::{Field, Matrix};

fn matrix_strategy(p: u32, max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..p, r * c).prop_map(move |data| {
            let f = Field::new(p).unwrap();
            Matrix::from_fn(f, r, c, |i, j| data[i * c + j])
        })
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    prop_oneof![matrix_strategy(2, 7, 7), matrix_strategy(3, 6, 6), matrix_strategy(5, 6, 6)]
}

proptest! {
    #[test]
    fn rank_nullity(m in any_matrix()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
    }

    #[test]
    fn rref_idempotent(m in any_matrix()) {
        let once = m.rref().matrix;
        prop_assert_eq!(once.rref().matrix, once);
    }

    #[test]
    fn kernel_vectors_vanish(m in any_matrix()) {
        let k = m.kernel_basis();
        prop_assert!(m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn solve_soundness(m in matrix_strategy(3, 5, 5), seed in 0u32..1000) {
        let f = m.field();
        let b = Matrix::from_fn(f, m.rows(), 2, |i, j| (seed / (i as u32 + j as u32 + 1)) % 3);
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.mul(&x), b);
        }
        // a consistent right-hand side always has a solution
        let x0 = Matrix::from_fn(f, m.cols(), 1, |i, _| (i as u32 + seed) % 3);
        let b0 = m.mul(&x0);
        let x = m.solve(&b0).unwrap();
        prop_assert!(x.is_some());
        prop_assert_eq!(m.mul(&x.unwrap()), b0);
    }

    #[test]
    fn tensor_rank_multiplies(a in matrix_strategy(5, 3, 3), b in matrix_strategy(5, 3, 3)) {
        prop_assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn image_and_complement_span(m in any_matrix()) {
        let img = m.image_basis();
        prop_assert_eq!(img.cols(), m.rank());
        let comp = img.complement_indices();
        let f = m.field();
        let e = Matrix::from_fn(f, m.rows(), comp.len(), |r, c| u32::from(r == comp[c]));
        prop_assert_eq!(img.hstack(&e).rank(), m.rows());
    }

    #[test]
    fn stack_round_trip(a in matrix_strategy(3, 4, 3), cols in 0usize..4) {
        let f = a.field();
        let b = Matrix::from_fn(f, a.rows(), cols, |i, j| ((i + 2 * j) % 3) as u32);
        let h = a.hstack(&b);
        prop_assert_eq!(h.block(0, 0, a.rows(), a.cols()), a.clone());
        prop_assert_eq!(h.block(0, a.cols(), a.rows(), cols), b);
        let v = a.vstack(&a);
        prop_assert_eq!(v.block(a.rows(), 0, a.rows(), a.cols()), a);
    }
}

/// Enumerates every vector of GF(2)^cols and checks that each null vector lies in the
/// span of the computed kernel basis.
fn kernel_complete_gf2(m: &Matrix) -> bool {
    let f = m.field();
    let cols = m.cols();
    let basis = m.kernel_basis();
    let basis_rank = basis.rank();
    for code in 0u32..(1 << cols) {
        let v: Vec<u32> = (0..cols).map(|j| (code >> j) & 1).collect();
        if m.apply(&v).iter().all(|&x| x == 0) {
            let row = Matrix::row_vector(f, &v);
            if basis.vstack(&row).rank() != basis_rank {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn kernel_completeness_exhaustive(m in matrix_strategy(2, 6, 12)) {
        prop_assert!(kernel_complete_gf2(&m));
    }
}

#[test]
fn kernel_completeness_full_width() {
    let f = Field::new(2).unwrap();
    let m = Matrix::from_fn(f, 5, 12, |i, j| u32::from((i * 7 + j * 3) % 4 == 1));
    assert!(kernel_complete_gf2(&m));
    assert!(kernel_complete_gf2(&Matrix::zeros(f, 3, 12)));
}

#[test]
fn from_rows_reduces_entries() {
    let f = Field::new(3).unwrap();
    let m = Matrix::from_rows(f, &[vec![1, 2], vec![0, -1]]).unwrap();
    assert_eq!(m.to_rows(), vec![vec![1, 2], vec![0, 2]]);
}
