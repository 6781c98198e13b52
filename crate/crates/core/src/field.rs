//! Finite fields GF(2^m) with m <= 16, via log/exp tables.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Field element in the polynomial basis, bit i = coefficient of x^i.
pub type Fe = u16;

/// Primitive moduli, indexed by degree.
const MODULI: [u32; 17] = [
    0, 0b11, 0b111, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b,
    0x4443, 0x8003, 0x1100b,
];

struct Inner {
    degree: u32,
    modulus: u32,
    order: usize,
    exp: Vec<Fe>,
    log: Vec<u32>,
}

/// GF(2^m). Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#x})", self.0.degree, self.0.modulus)
    }
}

fn clmul_mod(a: u32, b: u32, modulus: u32, degree: u32) -> u32 {
    let mut r = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> degree & 1 != 0 {
            a ^= modulus;
        }
    }
    r
}

impl Field {
    /// GF(2^m) with the built-in primitive modulus.
    pub fn new(m: u32) -> Result<Field, Error> {
        if m == 0 || m > 16 {
            return Err(Error::Field(format!("degree {m} out of range 1..=16")));
        }
        Field::with_modulus(m, MODULI[m as usize])
    }

    /// GF(2^m) with an explicit modulus (bit i = coefficient of x^i, bit m set).
    /// Fails if the quotient ring has no element of order 2^m - 1, i.e. the
    /// modulus is reducible.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Field, Error> {
        if m == 0 || m > 16 || modulus >> m != 1 {
            return Err(Error::Field(format!("bad modulus {modulus:#x} for degree {m}")));
        }
        let q = 1usize << m;
        let n = q - 1;
        // search for a generator of the multiplicative group
        let first = if m == 1 { 1 } else { 2 };
        for g in first..q as u32 {
            let mut exp = vec![0 as Fe; 2 * q];
            let mut log = vec![u32::MAX; q];
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..n {
                if log[x as usize] != u32::MAX {
                    ok = false;
                    break;
                }
                log[x as usize] = i as u32;
                exp[i] = x as Fe;
                x = clmul_mod(x, g, modulus, m);
            }
            if ok && x == 1 {
                for i in n..2 * q {
                    exp[i] = exp[i - n];
                }
                log[0] = 0;
                return Ok(Field(Arc::new(Inner { degree: m, modulus, order: q, exp, log })));
            }
        }
        Err(Error::Field(format!("modulus {modulus:#x} is not irreducible")))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }
    pub fn modulus(&self) -> u32 {
        self.0.modulus
    }
    /// Number of elements.
    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            0
        } else {
            let i = &self.0;
            i.exp[(i.log[a as usize] + i.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        let i = &self.0;
        let n = (i.order - 1) as u32;
        i.exp[((n - i.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let i = &self.0;
        let n = (i.order - 1) as u64;
        i.exp[((i.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Unique square root; squaring is a bijection in characteristic two.
    pub fn sqrt(&self, a: Fe) -> Fe {
        let mut x = a;
        for _ in 1..self.0.degree {
            x = self.mul(x, x);
        }
        x
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: Fe) -> Fe {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.0.degree {
            t ^= x;
            x = self.mul(x, x);
        }
        t
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.order).map(|x| x as Fe)
    }

    /// Lowercase hex of the coefficient bits.
    pub fn to_hex(&self, a: Fe) -> String {
        format!("{a:x}")
    }

    pub fn from_hex(&self, s: &str) -> Result<Fe, Error> {
        let v = u32::from_str_radix(s.trim(), 16)
            .map_err(|_| Error::Parse(format!("bad field element '{s}'")))?;
        if v as usize >= self.0.order {
            return Err(Error::Parse(format!("element '{s}' outside GF(2^{})", self.0.degree)));
        }
        Ok(v as Fe)
    }

    /// dst += c * src
    #[inline]
    pub fn axpy(&self, dst: &mut [Fe], src: &[Fe], c: Fe) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        if c == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
            return;
        }
        let i = &self.0;
        let lc = i.log[c as usize];
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d ^= i.exp[(i.log[s as usize] + lc) as usize];
            }
        }
    }

    /// v *= c
    #[inline]
    pub fn scale(&self, v: &mut [Fe], c: Fe) {
        if c == 1 {
            return;
        }
        if c == 0 {
            v.iter_mut().for_each(|x| *x = 0);
            return;
        }
        let i = &self.0;
        let lc = i.log[c as usize];
        for x in v.iter_mut() {
            if *x != 0 {
                *x = i.exp[(i.log[*x as usize] + lc) as usize];
            }
        }
    }

    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        let mut s = 0;
        for (&x, &y) in a.iter().zip(b) {
            s ^= self.mul(x, y);
        }
        s
    }

    /// Image of `small` in `self`, as a table indexed by the elements of `small`.
    pub fn embedding_from(&self, small: &Field) -> Result<Vec<Fe>, Error> {
        let (a, b) = (small.degree(), self.degree());
        if b % a != 0 {
            return Err(Error::Field(format!("GF(2^{a}) does not embed in GF(2^{b})")));
        }
        // a root of small's modulus in self
        let modulus = small.modulus();
        let root = (1..self.order() as u32)
            .map(|r| r as Fe)
            .find(|&r| {
                let mut acc: Fe = 0;
                for k in (0..=a).rev() {
                    acc = self.mul(acc, r);
                    if modulus >> k & 1 != 0 {
                        acc ^= 1;
                    }
                }
                acc == 0
            })
            .ok_or_else(|| Error::Field("no root of the small modulus".into()))?;
        let mut table = vec![0 as Fe; small.order()];
        for (x, slot) in table.iter_mut().enumerate() {
            let mut acc: Fe = 0;
            let mut p: Fe = 1;
            for k in 0..a {
                if x >> k & 1 != 0 {
                    acc ^= p;
                }
                p = self.mul(p, root);
            }
            *slot = acc;
        }
        Ok(table)
    }
}

/// Multiplicative order of 2 modulo the odd part of `exponent`.
pub fn splitting_degree_for_exponent(exponent: u64) -> u32 {
    let mut odd = exponent.max(1);
    while odd % 2 == 0 {
        odd /= 2;
    }
    if odd == 1 {
        return 1;
    }
    let mut x = 2 % odd;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % odd;
        k += 1;
    }
    k
}

/// Degree of GF(2^m) that is a splitting field for `g`.
pub fn splitting_degree(g: &crate::group::GroupTable) -> u32 {
    splitting_degree_for_exponent(g.exponent())
}
