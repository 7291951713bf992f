//! Fraction-free integer linear algebra: rank, pivot columns, determinants
//! and adjugate columns.

use crate::scalar::{self, ExactInt, Overflow};

/// Row-echelon reduction that keeps every row primitive. Returns the reduced
/// nonzero rows and the pivot column of each.
fn echelon<T: ExactInt>(rows: &[Vec<T>]) -> Result<(Vec<Vec<T>>, Vec<usize>), Overflow> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..ncols {
                let v = scalar::sub(&scalar::mul(&a, &m[i][j])?, &scalar::mul(&b, &m[r][j])?)?;
                m[i][j] = v;
            }
            scalar::primitive(&mut m[i]);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Ok((m, pivots))
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank<T: ExactInt>(rows: &[Vec<T>]) -> Result<usize, Overflow> {
    Ok(echelon(rows)?.1.len())
}

/// Columns on which the row space projects injectively.
pub fn pivot_columns<T: ExactInt>(rows: &[Vec<T>]) -> Result<Vec<usize>, Overflow> {
    Ok(echelon(rows)?.1)
}

/// Greedily selects indices of a maximal linearly independent subset of rows.
pub fn independent_rows<T: ExactInt>(rows: &[Vec<T>]) -> Result<Vec<usize>, Overflow> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<T>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis)? == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    Ok(chosen)
}

/// Determinant by Bareiss elimination (all divisions exact).
pub fn determinant<T: ExactInt>(m: &[Vec<T>]) -> Result<T, Overflow> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = scalar::sub(
                    &scalar::mul(&a[i][j], &a[k][k])?,
                    &scalar::mul(&a[i][k], &a[k][j])?,
                )?;
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    scalar::mul(&sign, &a[n - 1][n - 1])
}

/// Columns of `sign(det M) * adj(M)` for a nonsingular square `M`, so that
/// `M * col_j` is a positive multiple of the j-th unit vector. Each column
/// is returned primitive.
pub fn positive_adjugate_columns<T: ExactInt>(m: &[Vec<T>]) -> Result<Vec<Vec<T>>, Overflow> {
    let n = m.len();
    let det = determinant(m)?;
    assert!(!det.is_zero(), "adjugate columns requested for a singular matrix");
    let flip = det.is_negative();
    let minor = |skip_row: usize, skip_col: usize| -> Vec<Vec<T>> {
        (0..n)
            .filter(|&r| r != skip_row)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != skip_col)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect()
    };
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            // adj(M)[i][j] = (-1)^(i+j) det(M without row j and column i)
            let mut c = determinant(&minor(j, i))?;
            if (i + j) % 2 == 1 {
                c = -c;
            }
            if flip {
                c = -c;
            }
            col.push(c);
        }
        scalar::primitive(&mut col);
        cols.push(col);
    }
    Ok(cols)
}
