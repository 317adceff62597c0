//! Deterministic reductions over amplitude slices.
//!
//! Every sum is combined along a fixed binary tree whose shape depends only
//! on the slice length. Leaves below `LEAF` elements fold left to right.
//! The parallel build evaluates independent subtrees on rayon but combines
//! them in the same order, so sequential and parallel runs produce bitwise
//! identical results.

use num_complex::Complex64;

/// Largest range folded sequentially at the bottom of the tree.
const LEAF: usize = 1024;

/// Ranges at least this long are split across threads.
#[cfg(feature = "parallel")]
const PAR_SPLIT_MIN: usize = 1 << 15;

fn tree_sum<T, F>(lo: usize, hi: usize, leaf: &F) -> T
where
    T: Send + std::ops::Add<Output = T>,
    F: Fn(usize, usize) -> T + Sync,
{
    let len = hi - lo;
    if len <= LEAF {
        return leaf(lo, hi);
    }
    let mid = lo + len / 2;
    #[cfg(feature = "parallel")]
    if len >= PAR_SPLIT_MIN {
        let (a, b) = rayon::join(|| tree_sum(lo, mid, leaf), || tree_sum(mid, hi, leaf));
        return a + b;
    }
    tree_sum(lo, mid, leaf) + tree_sum(mid, hi, leaf)
}

/// Sum of a complex slice.
pub fn sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.is_empty() {
        return Complex64::ZERO;
    }
    tree_sum(0, xs.len(), &|lo, hi| {
        xs[lo..hi].iter().fold(Complex64::ZERO, |acc, &x| acc + x)
    })
}

/// Sum of squared magnitudes.
pub fn sum_norm_sqr(xs: &[Complex64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    tree_sum(0, xs.len(), &|lo, hi| {
        xs[lo..hi].iter().fold(0.0, |acc, x| acc + x.norm_sqr())
    })
}

/// Inner product `<reference, xs>`, conjugate-linear in the reference.
pub fn inner_product(reference: &[Complex64], xs: &[Complex64]) -> Complex64 {
    assert_eq!(reference.len(), xs.len());
    if xs.is_empty() {
        return Complex64::ZERO;
    }
    tree_sum(0, xs.len(), &|lo, hi| {
        reference[lo..hi]
            .iter()
            .zip(&xs[lo..hi])
            .fold(Complex64::ZERO, |acc, (r, x)| acc + r.conj() * x)
    })
}

/// Generic tree reduction over an index range. `leaf` folds a subrange,
/// `combine` joins adjacent partials; both must be associative for the
/// result to be partition-independent, which the fixed tree then makes
/// bitwise reproducible.
pub fn tree_reduce<T, F, G>(len: usize, leaf: &F, combine: &G) -> Option<T>
where
    T: Send,
    F: Fn(usize, usize) -> T + Sync,
    G: Fn(T, T) -> T + Sync,
{
    fn go<T, F, G>(lo: usize, hi: usize, leaf: &F, combine: &G) -> T
    where
        T: Send,
        F: Fn(usize, usize) -> T + Sync,
        G: Fn(T, T) -> T + Sync,
    {
        let len = hi - lo;
        if len <= LEAF {
            return leaf(lo, hi);
        }
        let mid = lo + len / 2;
        #[cfg(feature = "parallel")]
        if len >= PAR_SPLIT_MIN {
            let (a, b) = rayon::join(
                || go(lo, mid, leaf, combine),
                || go(mid, hi, leaf, combine),
            );
            return combine(a, b);
        }
        combine(go(lo, mid, leaf, combine), go(mid, hi, leaf, combine))
    }
    if len == 0 {
        return None;
    }
    Some(go(0, len, leaf, combine))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filled(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect()
    }

    #[test]
    fn matches_naive_on_small_inputs() {
        for n in [0, 1, 7, LEAF, LEAF + 1, 5000] {
            let xs = filled(n);
            let naive: Complex64 = xs.iter().sum();
            let tree = sum_complex(&xs);
            assert!((naive - tree).norm() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn tree_shape_is_length_determined() {
        // Two calls over the same data must agree bitwise.
        let xs = filled(1 << 17);
        let a = sum_norm_sqr(&xs);
        let b = sum_norm_sqr(&xs);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn inner_product_conjugates_reference() {
        let r = vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)];
        let x = vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)];
        // <r, x> = conj(i)*i = 1
        let ip = inner_product(&r, &x);
        assert!((ip - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
