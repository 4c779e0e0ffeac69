use crate::field::Field;

/// Determinant by Gaussian elimination with first-nonzero pivoting.
///
/// `one` fixes the field for the empty matrix.
pub fn det<F: Field>(mut m: Vec<Vec<F>>, one: &F) -> F {
    let n = m.len();
    let mut acc = one.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return one.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = acc.neg();
        }
        let p = m[col][col].clone();
        acc = acc.mul(&p);
        let p_inv = p.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&p_inv);
            let (top, bottom) = m.split_at_mut(r);
            let pivot_row = &top[col];
            for (x, y) in bottom[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.sub(&factor.mul(y));
            }
        }
    }
    acc
}
