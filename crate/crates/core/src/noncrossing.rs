//! Free moment–cumulant calculus by brute force over noncrossing partitions.
//!
//! Deliberately independent of the product-state oracles in [`crate::states`]:
//! each variable is a single letter with a moment sequence, and mixed moments
//! of freely independent variables are sums over `NC(n)` of products of free
//! cumulants on monochromatic blocks.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// All set partitions of `{0..n}` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(labels: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == n {
            out.push(labels.clone());
            return;
        }
        let next = if labels.is_empty() { 1 } else { max + 2 };
        for l in 0..next {
            labels.push(l);
            go(labels, n, max.max(l), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(&mut Vec::with_capacity(n), n, 0, &mut out);
    }
    out
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_noncrossing(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[b] == labels[a] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                if (c + 1..n).any(|d| labels[d] == labels[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// `NC(n)`, each partition as its list of blocks.
pub fn noncrossing_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    set_partitions(n)
        .into_iter()
        .filter(|l| is_noncrossing(l))
        .map(|labels| {
            let k = labels.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (i, l) in labels.iter().enumerate() {
                blocks[*l].push(i);
            }
            blocks
        })
        .collect()
}

/// Free cumulants `kappa_1..kappa_D` from moments `m_0 = 1, m_1, ..., m_D`.
/// Index 0 of the result is unused and set to zero.
pub fn free_cumulants(moments: &[Scalar]) -> Vec<Scalar> {
    let mut kappa = vec![Scalar::zero(); moments.len()];
    for n in 1..moments.len() {
        let mut rest = Scalar::zero();
        for pi in noncrossing_partitions(n) {
            if pi.len() == 1 {
                continue;
            }
            rest += pi.iter().map(|b| kappa[b.len()].clone()).product::<Scalar>();
        }
        kappa[n] = &moments[n] - rest;
    }
    kappa
}

/// `phi(x_{c_1} ... x_{c_n})` for freely independent `x_c` whose free
/// cumulants are `cumulants[c]`.
pub fn free_mixed_moment(colors: &[usize], cumulants: &[Vec<Scalar>]) -> Scalar {
    let mut total = Scalar::zero();
    'partitions: for pi in noncrossing_partitions(colors.len()) {
        let mut term = Scalar::one();
        for block in &pi {
            let c = colors[block[0]];
            if block.iter().any(|&i| colors[i] != c) {
                continue 'partitions;
            }
            term *= &cumulants[c][block.len()];
        }
        total += term;
    }
    total
}
