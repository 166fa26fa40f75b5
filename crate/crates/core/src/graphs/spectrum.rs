//! Characteristic polynomials and eigenvalue multiplicities.
//!
//! The characteristic polynomial is computed modulo enough 31-bit primes to
//! exceed a Hadamard-type bound on its coefficients and recombined by the
//! Chinese remainder theorem, so it is exact. The distinct-eigenvalue count
//! comes from the squarefree part of that polynomial; only the multiplicities
//! use floating point, and they are checked against the exact count.

use nalgebra::SymmetricEigen;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Graph, GraphError};
use crate::linalg::IntMat;

const CLUSTER_GAP: f64 = 1e-7;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn primes_below_2_31() -> impl Iterator<Item = u64> {
    let is_prime = |x: u64| {
        let mut d = 3;
        while d * d <= x {
            if x.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        true
    };
    ((1u64 << 30)..(1u64 << 31))
        .rev()
        .filter(|x| x % 2 == 1)
        .filter(move |&x| is_prime(x))
}

/// Characteristic polynomial modulo `p`, coefficients low to high, via
/// reduction to upper Hessenberg form.
fn charpoly_mod(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&r| h[r][c] != 0) else {
            continue;
        };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let inv = pow_mod(h[c + 1][c], p - 2, p);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let u = h[i][c] * inv % p;
            for j in 0..n {
                let t = u * h[c + 1][j] % p;
                h[i][j] = (h[i][j] + p - t) % p;
            }
            for row in h.iter_mut() {
                row[c + 1] = (row[c + 1] + u * row[i]) % p;
            }
        }
    }
    // polys[k] is the characteristic polynomial of the leading k x k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - h[k][k] * c % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % p;
            if prod == 0 {
                break;
            }
            let coef = h[i][k] * prod % p;
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = (next[j] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// Bits needed to hold twice the largest possible coefficient magnitude:
/// `|c_k| <= C(n, k) * k^(k/2) * B^k` by Hadamard's inequality on the
/// principal minors, `B` the largest entry.
fn coefficient_bits(n: usize, max_entry: f64) -> usize {
    let mut best = 0.0f64;
    let mut log_binom = 0.0f64;
    for k in 0..=n {
        if k > 0 {
            log_binom += ((n - k + 1) as f64).log2() - (k as f64).log2();
        }
        let kf = k as f64;
        let hadamard = if k > 0 { 0.5 * kf * kf.log2() } else { 0.0 };
        let bits = log_binom + hadamard + kf * max_entry.max(1.0).log2();
        best = best.max(bits);
    }
    best.ceil() as usize + 4
}

/// Exact characteristic polynomial `det(xI - M)`, coefficients low to high.
pub fn characteristic_polynomial(m: &IntMat) -> Vec<BigInt> {
    let n = m.size();
    let max_entry = m
        .as_slice()
        .iter()
        .map(|x| x.to_bigint().abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bits = coefficient_bits(n, max_entry.to_f64().unwrap_or(f64::MAX));
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    for p in primes_below_2_31() {
        let pb = BigInt::from(p);
        let reduced: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        m.get(i, j)
                            .to_bigint()
                            .mod_floor(&pb)
                            .to_u64()
                            .expect("residue fits")
                    })
                    .collect()
            })
            .collect();
        let res = charpoly_mod(&reduced, p);
        let inv = pow_mod((&modulus % &pb).to_u64().expect("residue fits"), p - 2, p);
        for (x, &r) in acc.iter_mut().zip(&res) {
            let cur = x.mod_floor(&pb).to_u64().expect("residue fits");
            let t = (r + p - cur) % p * inv % p;
            *x += &modulus * t;
        }
        modulus *= p;
        if modulus.bits() as usize > bits {
            break;
        }
    }
    let half = &modulus >> 1;
    for x in acc.iter_mut() {
        if *x > half {
            *x -= &modulus;
        }
    }
    acc
}

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn primitive_part(p: &mut [BigInt]) {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        r.pop();
        if r.is_empty() {
            r.push(BigInt::zero());
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    primitive_part(&mut a);
    primitive_part(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let mut r = prem(&a, &b);
        primitive_part(&mut r);
        a = b;
        b = r;
    }
    a
}

/// Degree of the squarefree part of a polynomial given low to high: the
/// number of distinct complex roots.
pub fn squarefree_degree(poly: &[BigInt]) -> usize {
    let deg = poly.len() - 1;
    if deg == 0 {
        return 0;
    }
    let derivative: Vec<BigInt> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i)
        .collect();
    let g = poly_gcd(poly, &derivative);
    deg - (g.len() - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub distinct_count: usize,
    /// Eigenvalue cluster centres, ascending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

pub fn spectrum_summary(g: &Graph) -> Result<SpectrumSummary, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let exact = squarefree_degree(&characteristic_polynomial(&g.adjacency_matrix()));
    let mut values: Vec<f64> = SymmetricEigen::new(g.adjacency_f64())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match clusters.last_mut() {
            Some(c) if v - c.last().expect("nonempty cluster") <= CLUSTER_GAP => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    if clusters.len() != exact {
        return Err(GraphError::ClusterMismatch {
            clusters: clusters.len(),
            exact,
        });
    }
    Ok(SpectrumSummary {
        distinct_count: exact,
        eigenvalues: clusters
            .iter()
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect(),
        multiplicities: clusters.iter().map(Vec::len).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{bfs_distance_partition, gen_cycle, gen_paley, gen_path, gen_star};
    use proptest::prelude::*;

    /// Faddeev-LeVerrier over the integers: `M_k = A M_{k-1} + c_{n-k+1} I`,
    /// `c_{n-k} = -tr(A M_k) / k`.
    fn faddeev_leverrier(a: &IntMat) -> Vec<BigInt> {
        let n = a.size();
        let big = |m: &IntMat| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| (0..n).map(|j| m.get(i, j).to_bigint()).collect())
                .collect()
        };
        let a = big(a);
        let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum())
                        .collect()
                })
                .collect()
        };
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            let mut next = mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            m = next;
            let am = mul(&a, &m);
            let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
            c[n - k] = -tr / BigInt::from(k);
        }
        c
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_characteristic_polynomials() {
        // K2: x^2 - 1
        let k2 = gen_path(2).unwrap().adjacency_matrix();
        assert_eq!(characteristic_polynomial(&k2), ints(&[-1, 0, 1]));
        // K3: (x - 2)(x + 1)^2 = x^3 - 3x - 2
        let k3 = gen_cycle(3).unwrap().adjacency_matrix();
        assert_eq!(characteristic_polynomial(&k3), ints(&[-2, -3, 0, 1]));
        assert_eq!(characteristic_polynomial(&IntMat::zeros(0)), ints(&[1]));
    }

    #[test]
    fn matches_faddeev_leverrier_on_non_symmetric_matrices() {
        let m = IntMat::from_rows(&[
            vec![2, -1, 0, 7],
            vec![0, 0, 3, 1],
            vec![5, 4, -2, 0],
            vec![1, 1, 1, 1],
        ]);
        assert_eq!(characteristic_polynomial(&m), faddeev_leverrier(&m));
    }

    #[test]
    fn squarefree_degrees() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        assert_eq!(squarefree_degree(&ints(&[2, -3, 0, 1])), 2);
        assert_eq!(squarefree_degree(&ints(&[-1, 0, 1])), 2);
        assert_eq!(squarefree_degree(&ints(&[0, 0, 0, 1])), 1);
        assert_eq!(squarefree_degree(&ints(&[5])), 0);
    }

    #[test]
    fn family_spectra() {
        let s = spectrum_summary(&gen_star(6).unwrap()).unwrap();
        assert_eq!(s.distinct_count, 3);
        assert_eq!(s.multiplicities, vec![1, 4, 1]);
        let (p13, _) = gen_paley(13, 1).unwrap();
        let s = spectrum_summary(&p13).unwrap();
        assert_eq!(s.distinct_count, 3);
        let mut m = s.multiplicities.clone();
        m.sort_unstable();
        assert_eq!(m, vec![1, 6, 6]);
        let s = spectrum_summary(&gen_path(2).unwrap()).unwrap();
        assert_eq!((s.distinct_count, s.multiplicities), (2, vec![1, 1]));
    }

    #[test]
    fn large_paley_polynomial_is_exact() {
        let (g, _) = gen_paley(61, 1).unwrap();
        let a = g.adjacency_matrix();
        let cp = characteristic_polynomial(&a);
        assert_eq!(squarefree_degree(&cp), 3);
        // roots 30 and (-1 +- sqrt 61)/2: (x - 30)(x^2 + x - 15)^30
        let mut expect = ints(&[-30, 1]);
        for _ in 0..30 {
            let f = ints(&[-15, 1, 1]);
            let mut next = vec![BigInt::zero(); expect.len() + 2];
            for (i, a) in expect.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            expect = next;
        }
        assert_eq!(cp, expect);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn modular_matches_faddeev_leverrier(g in arb_graph()) {
            let a = g.adjacency_matrix();
            prop_assert_eq!(characteristic_polynomial(&a), faddeev_leverrier(&a));
        }

        #[test]
        fn distinct_count_bounds_diameter(g in arb_graph()) {
            if g.is_connected() {
                let s = spectrum_summary(&g).unwrap();
                prop_assert_eq!(s.multiplicities.iter().sum::<usize>(), g.order());
                let d = (0..g.order())
                    .map(|v| bfs_distance_partition(&g, v).unwrap().diameter())
                    .max()
                    .unwrap();
                prop_assert!(s.distinct_count > d);
            }
        }
    }
}
