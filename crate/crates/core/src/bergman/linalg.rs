use crate::arith::GaussianRational;

/// Exact rank of a dense matrix over `Q(i)` by row reduction.
pub fn rank(mut rows: Vec<Vec<GaussianRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot: Vec<GaussianRational> = rows[r].iter().map(|v| v * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &(pv * &f);
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![vec![g(0), g(0)], vec![g(0), g(0)]]), 0);
        assert_eq!(rank(vec![vec![g(1), g(2)], vec![g(2), g(4)]]), 1);
        assert_eq!(rank(vec![vec![g(1), g(2)], vec![g(3), g(4)]]), 2);
        let i = GaussianRational::i();
        // rows (1, i) and (i, -1) are dependent over Q(i)
        assert_eq!(rank(vec![vec![g(1), i.clone()], vec![i, g(-1)]]), 1);
    }
}
