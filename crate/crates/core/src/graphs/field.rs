//! Small finite fields `GF(p^a)` as polynomial residues over `GF(p)`.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{a-1} p^{a-1}`
//! of its coefficient vector; this code also fixes the lexicographic order
//! used to pick the modulus and the primitive element.

use super::GraphError;

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    a: u32,
    q: u32,
    /// Coefficients `c_0..c_{a-1}` of the monic modulus `x^a + ... + c_0`.
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(x: u32, p: u32, a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(a as usize);
    let mut x = x;
    for _ in 0..a {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `poly` (coefficients low to high) modulo a monic polynomial.
fn poly_rem(mut poly: Vec<u32>, monic: &[u32], p: u32) -> Vec<u32> {
    // monic = [c_0, .., c_{d-1}] with implicit leading 1 at degree d
    let d = monic.len();
    while poly.len() > d {
        let lead = poly.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = poly.len() - d;
        for (i, &c) in monic.iter().enumerate() {
            let t = &mut poly[shift + i];
            *t = (*t + (p - c) * lead % p) % p;
        }
    }
    poly.resize(d, 0);
    poly
}

fn poly_mul_mod(x: &[u32], y: &[u32], monic: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; x.len() + y.len()];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    poly_rem(prod, monic, p)
}

/// Whether the monic polynomial with the given low coefficients has a monic
/// factor of degree between 1 and half its degree.
fn is_irreducible(monic: &[u32], p: u32) -> bool {
    let a = monic.len() as u32;
    for deg in 1..=a / 2 {
        for code in 0..p.pow(deg) {
            let factor = digits(code, p, deg);
            let mut full = monic.to_vec();
            full.push(1);
            let r = poly_rem(full, &factor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds `GF(p^a)` with the lexicographically smallest monic irreducible
    /// modulus and the smallest primitive element.
    pub fn new(p: u32, a: u32) -> Result<Self, GraphError> {
        if !is_prime(p) {
            return Err(GraphError::InvalidParameter(format!("{p} is not prime")));
        }
        if a == 0 || (p as u64).pow(a) > 1 << 20 {
            return Err(GraphError::InvalidParameter(format!(
                "field order {p}^{a} out of range"
            )));
        }
        let q = p.pow(a);
        let modulus = (0..q)
            .map(|code| digits(code, p, a))
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");

        let mut field = GaloisField {
            p,
            a,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let primitive = (1..q)
            .find(|&g| field.slow_order(g) == q - 1)
            .expect("the multiplicative group is cyclic");
        field.primitive = primitive;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = field.slow_mul(x, primitive);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn slow_mul(&self, x: u32, y: u32) -> u32 {
        let r = poly_mul_mod(
            &digits(x, self.p, self.a),
            &digits(y, self.p, self.a),
            &self.modulus,
            self.p,
        );
        undigits(&r, self.p)
    }

    fn slow_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let dx = digits(x, self.p, self.a);
        let dy = digits(y, self.p, self.a);
        let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let d: Vec<u32> = digits(x, self.p, self.a)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        undigits(&d, self.p)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let k = (self.log[x as usize] + self.log[y as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = (self.log[x as usize] as u64 * e) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    /// `xi^k` for the primitive element `xi`.
    pub fn primitive_power(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    pub fn is_nonzero_square(&self, x: u32) -> bool {
        x != 0 && self.log[x as usize].is_multiple_of(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = GaloisField::new(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0]);
        assert_eq!(f.primitive_element(), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        let f13 = GaloisField::new(13, 1).unwrap();
        assert_eq!(f13.primitive_element(), 2);
        let squares: Vec<u32> = (1..13).filter(|&x| f13.is_nonzero_square(x)).collect();
        assert_eq!(squares, vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn gf9_uses_smallest_irreducible() {
        let f = GaloisField::new(3, 2).unwrap();
        // x^2 + 1 (code 1) is the smallest monic irreducible quadratic over GF(3)
        assert_eq!(f.modulus(), &[1, 0]);
        // x (code 3) has order 4 there, x + 1 (code 4) is primitive
        assert_eq!(f.primitive_element(), 4);
        for x in 1..9 {
            let inv = (1..9).find(|&y| f.mul(x, y) == 1);
            assert!(inv.is_some());
        }
        assert_eq!((1..9).filter(|&x| f.is_nonzero_square(x)).count(), 4);
    }

    #[test]
    fn multiplication_is_associative_and_distributive() {
        for (p, a) in [(2, 3), (3, 2), (5, 2), (3, 4), (7, 2)] {
            let f = GaloisField::new(p, a).unwrap();
            let q = f.order();
            let sample: Vec<u32> = (0..q).step_by((q as usize / 7).max(1)).collect();
            for &x in &sample {
                for &y in &sample {
                    assert_eq!(f.mul(x, y), f.slow_mul(x, y));
                    for &z in &sample {
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = GaloisField::new(3, 4).unwrap();
        for x in (0..81).step_by(5) {
            for y in (0..81).step_by(7) {
                assert_eq!(f.pow(f.add(x, y), 3), f.add(f.pow(x, 3), f.pow(y, 3)));
            }
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(GaloisField::new(9, 1).is_err());
    }
}
