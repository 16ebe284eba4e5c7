use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ff::arith;

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 20;
/// Largest field order for which a full square-root table is allowed.
const SQRT_TABLE_LIMIT: u64 = 10_000;

/// An element of `F_{p^k}`, stored as its coefficient tuple `(c_0, .., c_{k-1})`
/// packed into one integer with `c_0` as the most significant base-`p` digit.
///
/// The packing makes the integer order coincide with the lexicographic order
/// on coefficient tuples, so `Ord` on `FqElem` is the element order used for
/// every "smallest" tie-break.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FqElem(pub(crate) u64);

impl FqElem {
    /// The packed code; `0` is always the zero element.
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// monic modulus, low degree first, length k+1
    modulus: Vec<u64>,
    /// `p^(k-1-i)`: place value of coefficient `i`
    place: Vec<u64>,
    tables: Option<Tables>,
    generator: OnceLock<FqElem>,
    sqrt_table: OnceLock<Vec<u64>>,
    nonresidue: OnceLock<FqElem>,
}

/// The finite field `F_{p^k}` with a deterministically chosen modulus.
///
/// Cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.k == other.inner.k
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.describe())
    }
}

impl FieldCtx {
    /// Builds `F_{p^k}`. The modulus is the first monic irreducible of degree `k`
    /// when coefficient tuples `(c_0, .., c_{k-1})` are ordered lexicographically.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 7 {
            return Err(Error::CharacteristicTooSmall(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q < (1u128 << 63));
        let q = q.ok_or(Error::FieldTooLarge { p, k })? as u64;
        let modulus = if k == 1 { vec![0, 1] } else { first_irreducible(p, k as usize) };
        let place = (0..k).map(|i| p.pow(k - 1 - i)).collect();
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            place,
            tables: None,
            generator: OnceLock::new(),
            sqrt_table: OnceLock::new(),
            nonresidue: OnceLock::new(),
        };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Self { inner: Arc::new(inner) })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// `"p^k:c0,c1,..,ck"` with the modulus coefficients low degree first.
    pub fn describe(&self) -> String {
        let m: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", self.p(), self.k(), m.join(","))
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(self.inner.place[0])
    }

    /// The class of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        let p = self.p() as i64;
        let r = n.rem_euclid(p) as u64;
        FqElem(r * self.inner.place[0])
    }

    /// The element `X` (a root of the modulus); equals `0` when `k = 1`.
    pub fn generator_x(&self) -> FqElem {
        if self.k() == 1 {
            FqElem(0)
        } else {
            FqElem(self.inner.place[1])
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.k() as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.k()
            )));
        }
        let mut code = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p() {
                return Err(Error::InvalidArgument(format!("residue {c} not reduced mod {}", self.p())));
            }
            code += c * self.inner.place[i];
        }
        Ok(FqElem(code))
    }

    /// Element with the given packed code; fails if the code is out of range.
    pub fn from_code(&self, code: u64) -> Result<FqElem> {
        if code >= self.q() {
            return Err(Error::ContextMismatch);
        }
        Ok(FqElem(code))
    }

    /// Coefficients `c_0, .., c_{k-1}` (low degree first).
    pub fn coeffs(&self, a: FqElem) -> Vec<u64> {
        let mut out = vec![0u64; self.k() as usize];
        self.unpack(a, &mut out);
        out
    }

    /// The residue of a prime-subfield element, if `a` lies in `F_p`.
    pub fn as_prime(&self, a: FqElem) -> Option<u64> {
        let place = self.inner.place[0];
        a.0.is_multiple_of(place).then_some(a.0 / place)
    }

    fn unpack(&self, a: FqElem, out: &mut [u64]) {
        let p = self.p();
        let mut v = a.0;
        for slot in out.iter_mut().rev() {
            *slot = v % p;
            v /= p;
        }
    }

    fn pack(&self, digits: &[u64]) -> FqElem {
        let p = self.p();
        FqElem(digits.iter().fold(0u64, |acc, &d| acc * p + d))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q()).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p();
        if self.k() == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut code = 0u64;
        // least significant digit first
        let mut mult = 1u64;
        for _ in 0..self.k() {
            let s = x % p + y % p;
            code += if s >= p { s - p } else { s } * mult;
            x /= p;
            y /= p;
            mult *= p;
        }
        FqElem(code)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.p();
        if self.k() == 1 {
            return FqElem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut code = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k() {
            let d = x % p;
            code += if d == 0 { 0 } else { p - d } * mult;
            x /= p;
            mult *= p;
        }
        FqElem(code)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.k() == 1 {
            return FqElem(arith::mul_mod(a.0, b.0, self.p()));
        }
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        if let Some(t) = &self.inner.tables {
            let n = self.q() - 1;
            let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
            return FqElem(t.exp[e as usize] as u64);
        }
        self.mul_schoolbook(a, b)
    }

    fn mul_schoolbook(&self, a: FqElem, b: FqElem) -> FqElem {
        let k = self.k() as usize;
        let p = self.p();
        let mut x = [0u64; 64];
        let mut y = [0u64; 64];
        self.unpack(a, &mut x[..k]);
        self.unpack(b, &mut y[..k]);
        let mut prod = [0u64; 128];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + arith::mul_mod(x[i], y[j], p)) % p;
            }
        }
        let m = &self.inner.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let t = arith::mul_mod(c, m[i], p);
                prod[d - k + i] = (prod[d - k + i] + p - t) % p;
            }
        }
        self.pack(&prod[..k])
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        if self.k() == 1 {
            return Ok(FqElem(arith::inv_mod(a.0, self.p())));
        }
        if let Some(t) = &self.inner.tables {
            let n = self.q() - 1;
            let l = t.log[a.0 as usize] as u64;
            return Ok(FqElem(t.exp[((n - l) % n) as usize] as u64));
        }
        Ok(self.pow(a, self.q() - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: FqElem, i: u32) -> FqElem {
        let mut r = a;
        for _ in 0..(i % self.k()) {
            r = self.pow(r, self.p());
        }
        r
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        a.0 == 0 || self.pow(a, (self.q() - 1) / 2) == self.one()
    }

    /// A square root of `a`, choosing the lexicographically smaller of `±r`.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return Some(a);
        }
        if self.q() <= SQRT_TABLE_LIMIT {
            let t = self.inner.sqrt_table.get_or_init(|| self.build_sqrt_table());
            let r = t[a.0 as usize];
            return (r != u64::MAX).then_some(FqElem(r));
        }
        self.sqrt_direct(a)
    }

    /// Square root without the lookup table (Tonelli–Shanks, or a single
    /// exponentiation when `q ≡ 3 mod 4`).
    pub fn sqrt_direct(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let q = self.q();
        let r = if q % 4 == 3 {
            self.pow(a, (q + 1) / 4)
        } else {
            self.tonelli_shanks(a)
        };
        debug_assert_eq!(self.square(r), a);
        Some(self.canonical_root(r))
    }

    fn canonical_root(&self, r: FqElem) -> FqElem {
        let n = self.neg(r);
        if n < r {
            n
        } else {
            r
        }
    }

    fn tonelli_shanks(&self, a: FqElem) -> FqElem {
        let q = self.q();
        let mut s = 0u32;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = *self.inner.nonresidue.get_or_init(|| {
            self.elements()
                .skip(1)
                .find(|&z| !self.is_square(z))
                .expect("every odd-order field has a non-residue")
        });
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        let one = self.one();
        while b != one {
            let mut i = 0u32;
            let mut b2 = b;
            while b2 != one {
                b2 = self.square(b2);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.square(g);
            }
            x = self.mul(x, g);
            c = self.square(g);
            b = self.mul(b, c);
            m = i;
        }
        x
    }

    fn build_sqrt_table(&self) -> Vec<u64> {
        let mut t = vec![u64::MAX; self.q() as usize];
        for r in self.elements() {
            let s = self.square(r).0 as usize;
            if t[s] == u64::MAX || r.0 < t[s] {
                t[s] = r.0;
            }
        }
        t
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> FqElem {
        *self.inner.generator.get_or_init(|| find_generator(self))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let mut n = self.q() - 1;
        for (l, _) in arith::factorize(self.q() - 1) {
            while n.is_multiple_of(l) && self.pow(a, n / l) == self.one() {
                n /= l;
            }
        }
        Ok(n)
    }

    /// The smallest primitive `n`-th root of unity.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FqElem> {
        if n == 0 || !(self.q() - 1).is_multiple_of(n) {
            return Err(Error::NoRootsOfUnity { n, q: self.q() });
        }
        let h = self.pow(self.primitive_element(), (self.q() - 1) / n);
        let mut best: Option<FqElem> = None;
        let mut r = self.one();
        for j in 0..n {
            if arith::gcd(j, n) == 1 && best.is_none_or(|b| r < b) {
                best = Some(r);
            }
            r = self.mul(r, h);
        }
        Ok(best.expect("n >= 1 has a unit"))
    }

    /// All `n`-th roots of unity, as consecutive powers `1, w, w^2, ..` of the
    /// smallest primitive root `w`.
    pub fn roots_of_unity(&self, n: u64) -> Result<Vec<FqElem>> {
        let w = self.primitive_root_of_unity(n)?;
        let mut out = Vec::with_capacity(n as usize);
        let mut r = self.one();
        for _ in 0..n {
            out.push(r);
            r = self.mul(r, w);
        }
        Ok(out)
    }

    /// `"c0,c1,.."` residues low degree first.
    pub fn format_elem(&self, a: FqElem) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        c.join(",")
    }

    pub fn parse_elem(&self, s: &str) -> Result<FqElem> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }
}

fn find_generator(ctx: &FieldCtx) -> FqElem {
    let n = ctx.q() - 1;
    let primes: Vec<u64> = arith::factorize(n).into_iter().map(|(l, _)| l).collect();
    let one = ctx.one();
    ctx.elements()
        .skip(1)
        .find(|&g| primes.iter().all(|&l| ctx.pow(g, n / l) != one))
        .expect("multiplicative group is cyclic")
}

fn build_tables(inner: &Inner) -> Tables {
    // temporary context without tables to run schoolbook arithmetic
    let bare = FieldCtx {
        inner: Arc::new(Inner {
            p: inner.p,
            k: inner.k,
            q: inner.q,
            modulus: inner.modulus.clone(),
            place: inner.place.clone(),
            tables: None,
            generator: OnceLock::new(),
            sqrt_table: OnceLock::new(),
            nonresidue: OnceLock::new(),
        }),
    };
    let g = bare.primitive_element();
    let n = (inner.q - 1) as usize;
    let mut exp = vec![0u32; n];
    let mut log = vec![0u32; inner.q as usize];
    let mut x = bare.one();
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x.0 as u32;
        log[x.0 as usize] = i as u32;
        x = bare.mul_schoolbook(x, g);
    }
    Tables { exp, log }
}

/// Lexicographically first monic irreducible of degree `k` over `F_p`.
fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut tail = vec![0u64; k];
    loop {
        let mut f = tail.clone();
        f.push(1);
        if arith::fp_poly_is_irreducible(&f, p) {
            return f;
        }
        // increment with c_{k-1} varying fastest
        let mut i = k;
        loop {
            i -= 1;
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
        }
    }
}
