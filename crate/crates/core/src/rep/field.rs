//! Just enough GF(2^n) arithmetic to write down minimal polynomials of roots
//! of unity. Elements and polynomials over GF(2) are bit-packed into `u64`
//! (bit `i` is the coefficient of `x^i`), so `n <= 63`.

/// Degree of a nonzero GF(2) polynomial.
fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Multiplicative order of 2 modulo odd `r`.
pub(crate) fn order_of_two(r: u32) -> u32 {
    let mut e = 1u32;
    let mut x = 2 % r;
    while x != 1 {
        x = (x * 2) % r;
        e += 1;
    }
    e
}

fn prime_factors(mut r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= r {
        if r % p == 0 {
            out.push(p);
            while r % p == 0 {
                r /= p;
            }
        }
        p += 1;
    }
    if r > 1 {
        out.push(r);
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Gf2n {
    n: u32,
    /// Modulus including the `x^n` term.
    modulus: u64,
}

impl Gf2n {
    /// The field defined by the least irreducible polynomial of degree `n`
    /// (least as a bit pattern). Deterministic, so the chosen root of unity
    /// is reproducible.
    pub fn new(n: u32) -> Self {
        assert!((1..=63).contains(&n), "GF(2^{n}) is out of range");
        let top = 1u64 << n;
        let modulus = (0..top)
            .filter(|c| c & 1 == 1 || n == 1)
            .map(|c| top | c)
            .find(|&p| Self::is_irreducible(p, n))
            .expect("irreducible polynomials exist in every degree");
        Self { n, modulus }
    }

    /// Ben-Or: `p` of degree `n` is irreducible iff `gcd(x^{2^i} - x, p) = 1`
    /// for `1 <= i <= n/2`.
    fn is_irreducible(p: u64, n: u32) -> bool {
        let ring = Self { n, modulus: p };
        let x = 0b10;
        let mut power = x;
        for _ in 0..n / 2 {
            power = ring.mul(power, power);
            if poly_gcd(p, power ^ x) != 1 {
                return false;
            }
        }
        true
    }

    pub fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> self.n) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// An element of multiplicative order exactly `r`; requires `r | 2^n - 1`.
    pub fn root_of_unity(&self, r: u32) -> u64 {
        let group = (1u64 << self.n) - 1;
        let r = r as u64;
        assert_eq!(group % r, 0, "GF(2^{}) has no element of order {r}", self.n);
        let primes = prime_factors(r);
        (2..=group)
            .map(|c| self.pow(c, group / r))
            .find(|&g| g != 1 && primes.iter().all(|&p| self.pow(g, r / p) != 1))
            .expect("the multiplicative group is cyclic")
    }
}

/// Minimal polynomial over GF(2) of `ω^a` for a fixed primitive `r`-th root
/// of unity `ω`, as coefficients `[c_0, ..., c_{m-1}]` of the monic
/// polynomial `x^m + Σ c_i x^i`.
///
/// `ω` is the root returned by [`Gf2n::root_of_unity`] in the field of degree
/// `ord_r(2)`, so the same `r` always yields the same `ω`.
pub(crate) fn minimal_polynomial(r: u32, a: u32) -> Vec<bool> {
    let n = order_of_two(r);
    let field = Gf2n::new(n);
    let omega = field.root_of_unity(r);
    // the Frobenius orbit of a
    let mut orbit = vec![a % r];
    let mut e = (2 * a) % r;
    while e != a % r {
        orbit.push(e);
        e = (2 * e) % r;
    }
    // product of (X + ω^e), coefficients in GF(2^n), low degree first
    let mut poly = vec![1u64];
    for e in orbit {
        let root = field.pow(omega, e as u64);
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= field.mul(c, root);
        }
        poly = next;
    }
    assert!(poly.iter().all(|&c| c <= 1), "Frobenius-stable product must lie over GF(2)");
    poly.pop();
    poly.into_iter().map(|c| c == 1).collect()
}
