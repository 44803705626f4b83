//! Dense linear algebra over GF(q).

use crate::field::{Field, FieldElem};

/// Reduced row echelon form, in place. Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut [Vec<FieldElem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, k);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel basis: one vector per free column, in column order. Each vector has a one at
/// its free column and zeros at the other free columns.
pub fn kernel(field: &Field, rows: &[Vec<FieldElem>], ncols: usize) -> Vec<Vec<FieldElem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![FieldElem::ZERO; ncols];
            v[free] = FieldElem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][free]);
            }
            v
        })
        .collect()
}

/// The first kernel basis vector, if the kernel is nonzero.
pub fn first_kernel_vector(field: &Field, rows: &[Vec<FieldElem>], ncols: usize) -> Option<Vec<FieldElem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![FieldElem::ZERO; ncols];
    v[free] = FieldElem::ONE;
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = field.neg(m[r][free]);
    }
    Some(v)
}

pub fn rank(field: &Field, rows: &[Vec<FieldElem>], ncols: usize) -> usize {
    rref(field, &mut rows.to_vec(), ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(field: &Field, rows: &[Vec<FieldElem>], v: &[FieldElem]) -> Vec<FieldElem> {
        rows.iter()
            .map(|r| r.iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
            .collect()
    }

    #[test]
    fn kernel_matches_brute_force() {
        // Oracle: enumerate all vectors of GF(3)^4 and count those in the kernel.
        let f = Field::gf(3, 1).unwrap();
        let e = |k: i64| f.from_int(k);
        let rows = vec![vec![e(1), e(2), e(0), e(1)], vec![e(2), e(1), e(0), e(2)], vec![e(0), e(0), e(1), e(1)]];
        let ker = kernel(&f, &rows, 4);
        let mut brute = 0;
        for i in 0..81u32 {
            let v: Vec<FieldElem> = (0..4).map(|k| e(((i / 3u32.pow(k)) % 3) as i64)).collect();
            brute += apply(&f, &rows, &v).iter().all(|x| x.is_zero()) as u32;
        }
        assert_eq!(3u32.pow(ker.len() as u32), brute);
        assert_eq!(rank(&f, &rows, 4) + ker.len(), 4);
        for v in &ker {
            assert!(apply(&f, &rows, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(first_kernel_vector(&f, &rows, 4).as_ref(), ker.first());
    }

    #[test]
    fn full_rank_has_no_kernel() {
        let f = Field::gf(2, 2).unwrap();
        let rows = vec![vec![f.one(), f.zero()], vec![f.elem(2).unwrap(), f.one()]];
        assert!(first_kernel_vector(&f, &rows, 2).is_none());
        assert!(first_kernel_vector(&f, &[], 3).is_some());
    }
}
