use crate::error::{Error, Result};
use crate::ff::arith;
use crate::ff::{FieldCtx, FqElem};

/// Dense univariate polynomial over a finite field, low degree first.
/// The stored coefficient list never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly {
    ctx: FieldCtx,
    coeffs: Vec<FqElem>,
}

impl DensePoly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { ctx: ctx.clone(), coeffs }
    }

    /// Polynomial with integer coefficients reduced into the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or_default()
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.ctx.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::new(&self.ctx, c))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let f = &self.ctx;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::new(f, out))
    }

    pub fn scale(&self, c: FqElem) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_ctx(divisor)?;
        let f = &self.ctx;
        let dd = divisor.degree().ok_or(Error::ZeroInverse)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for d in (dd..rem.len()).rev() {
            let c = f.mul(rem[d], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[d - dd] = c;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                rem[d - dd + i] = f.sub(rem[d - dd + i], f.mul(c, m));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(self.ctx.inv(self.leading())?))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.ctx;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.from_int(i as i64)))
            .collect();
        Self::new(f, c)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::new(&self.ctx, vec![self.ctx.one()]).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.ctx;
        self.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(inner(X))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_ctx(inner)?;
        let mut acc = Self::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&Self::new(&self.ctx, vec![c]))?;
        }
        Ok(acc)
    }

    /// All roots in the coefficient field, sorted, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<FqElem> {
        self.ctx.elements().filter(|&x| self.eval(x).is_zero()).collect()
    }

    /// Coefficients as prime-field residues; fails if some coefficient lies
    /// outside `F_p`.
    pub fn prime_coeffs(&self) -> Result<Vec<u64>> {
        self.coeffs
            .iter()
            .map(|&c| {
                self.ctx
                    .as_prime(c)
                    .ok_or_else(|| Error::InvalidArgument("coefficient outside the prime field".into()))
            })
            .collect()
    }

    /// Copy of a prime-field polynomial into another field of the same characteristic.
    pub fn lift(&self, target: &FieldCtx) -> Result<Self> {
        if target.p() != self.ctx.p() {
            return Err(Error::ContextMismatch);
        }
        let c = self.prime_coeffs()?;
        Ok(Self::new(target, c.iter().map(|&r| target.from_int(r as i64)).collect()))
    }

    /// Squarefree part (product of the distinct monic irreducible factors).
    pub fn squarefree_part(&self) -> Result<Self> {
        let f = self.monic()?;
        if f.degree().unwrap_or(0) == 0 {
            return Ok(f);
        }
        let d = f.derivative();
        if d.is_zero() {
            // f = g(X^p); over a perfect field its p-th root has coefficients c^(1/p)
            let ctx = &self.ctx;
            let p = ctx.p() as usize;
            let k = ctx.k();
            let root: Vec<FqElem> = f
                .coeffs
                .iter()
                .step_by(p)
                .map(|&c| ctx.frobenius(c, k - 1))
                .collect();
            return Self::new(ctx, root).squarefree_part();
        }
        let g = f.gcd(&d)?;
        // f / gcd(f, f') collects the factors whose multiplicity is prime to p;
        // the others all divide g
        let w = f.div_rem(&g)?.0;
        let r = g.squarefree_part()?;
        let common = w.gcd(&r)?;
        w.mul(&r.div_rem(&common)?.0)?.monic()
    }
}

/// Smallest `e` such that `f` splits into linear factors over the degree-`e`
/// extension of its coefficient field: the lcm of the degrees of the distinct
/// irreducible factors, found by distinct-degree factorization.
pub fn splitting_degree(f: &DensePoly) -> Result<u64> {
    let ctx = f.ctx();
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut rest = f.squarefree_part()?;
    let x = DensePoly::x(ctx);
    let mut h = x.clone();
    let mut acc = 1u64;
    let mut d = 0u64;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        let n = rest.degree().unwrap() as u64;
        if 2 * d > n {
            // what is left is irreducible
            acc = arith::lcm(acc, n);
            break;
        }
        h = h.rem(&rest)?;
        for _ in 0..ctx.k() {
            h = h.pow_mod(ctx.p(), &rest)?;
        }
        let g = rest.gcd(&h.sub(&x)?)?;
        if g.degree().unwrap_or(0) > 0 {
            acc = arith::lcm(acc, d);
            rest = rest.div_rem(&g)?.0;
            h = h.rem(&rest)?;
        }
    }
    Ok(acc)
}
