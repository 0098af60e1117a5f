use super::field::Field;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Columns are eliminated left to right.
pub fn row_reduce<F: Field>(k: &F, m: &mut [Vec<F::Element>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = k.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i == r || k.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                let d = k.mul(&factor, &m[r][j]);
                m[i][j] = k.sub(&m[i][j], &d);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A nonzero kernel vector, or `None` when the kernel is trivial.
///
/// The first free column gets coordinate 1 and the others 0.
pub fn kernel_vector<F: Field>(k: &F, matrix: &[Vec<F::Element>]) -> Option<Vec<F::Element>> {
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut m = matrix.to_vec();
    let pivots = row_reduce(k, &mut m);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![k.zero(); cols];
    x[free] = k.one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = k.neg(&m[row][free]);
    }
    Some(x)
}
