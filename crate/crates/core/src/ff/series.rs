use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FqElem};

/// Truncated power series `c_0 + c_1 t + .. + c_{N-1} t^{N-1} + O(t^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    ctx: FieldCtx,
    coeffs: Vec<FqElem>,
}

impl PowerSeries {
    /// Series with the given leading coefficients, padded with zeros to `precision`.
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<FqElem>, precision: usize) -> Self {
        coeffs.resize(precision, ctx.zero());
        Self { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &FieldCtx, precision: usize) -> Self {
        Self::new(ctx, Vec::new(), precision)
    }

    pub fn constant(ctx: &FieldCtx, c: FqElem, precision: usize) -> Self {
        Self::new(ctx, vec![c], precision)
    }

    /// `c + t`.
    pub fn linear(ctx: &FieldCtx, c: FqElem, precision: usize) -> Self {
        Self::new(ctx, vec![c, ctx.one()], precision)
    }

    /// `t^e`.
    pub fn monomial(ctx: &FieldCtx, e: usize, precision: usize) -> Self {
        let mut c = vec![ctx.zero(); e + 1];
        c[e] = ctx.one();
        Self::new(ctx, c, precision)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn set_coeff(&mut self, i: usize, c: FqElem) {
        self.coeffs[i] = c;
    }

    /// Index of the first nonzero coefficient; `None` if the series is zero
    /// to its precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        Self { ctx: self.ctx.clone(), coeffs: self.coeffs[..n].to_vec() }
    }

    fn check(&self, other: &Self) -> Result<usize> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.precision().min(other.precision()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        let c = (0..n).map(|i| self.ctx.add(self.coeffs[i], other.coeffs[i])).collect();
        Ok(Self { ctx: self.ctx.clone(), coeffs: c })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        let c = (0..n).map(|i| self.ctx.sub(self.coeffs[i], other.coeffs[i])).collect();
        Ok(Self { ctx: self.ctx.clone(), coeffs: c })
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|&a| self.ctx.neg(a)).collect();
        Self { ctx: self.ctx.clone(), coeffs: c }
    }

    pub fn scale(&self, s: FqElem) -> Self {
        let c = self.coeffs.iter().map(|&a| self.ctx.mul(a, s)).collect();
        Self { ctx: self.ctx.clone(), coeffs: c }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        let f = &self.ctx;
        let mut out = vec![f.zero(); n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Ok(Self { ctx: f.clone(), coeffs: out })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let n = self.precision();
        let mut acc = Self::constant(&self.ctx, self.ctx.one(), n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let f = &self.ctx;
        let n = self.precision();
        let c0 = f.inv(self.coeff(0))?;
        let mut out = vec![f.zero(); n];
        if n == 0 {
            return Ok(Self { ctx: f.clone(), coeffs: out });
        }
        out[0] = c0;
        for i in 1..n {
            let mut s = f.zero();
            for j in 1..=i {
                s = f.add(s, f.mul(self.coeffs[j], out[i - j]));
            }
            out[i] = f.neg(f.mul(s, c0));
        }
        Ok(Self { ctx: f.clone(), coeffs: out })
    }

    /// `self(inner(t))` for `inner` without constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let n = self.check(inner)?;
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidArgument("inner series must have zero constant term".into()));
        }
        let f = &self.ctx;
        let mut acc = Self::zero(f, n);
        for &c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&inner.truncate(n))?;
            acc.coeffs[0] = f.add(acc.coeffs[0], c);
        }
        Ok(acc)
    }

    /// Compositional inverse of a series `a_1 t + a_2 t^2 + ..` with `a_1 != 0`.
    pub fn reverse(&self) -> Result<Self> {
        let f = &self.ctx;
        let n = self.precision();
        if !self.coeff(0).is_zero() || self.coeff(1).is_zero() {
            return Err(Error::InvalidArgument("series is not invertible under composition".into()));
        }
        let a1_inv = f.inv(self.coeff(1))?;
        // solve self(g(t)) = t one coefficient at a time
        let mut g = Self::monomial(f, 1, n).scale(a1_inv);
        for i in 2..n {
            let c = self.compose(&g)?.coeff(i);
            g.coeffs[i] = f.neg(f.mul(c, a1_inv));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ctx: &FieldCtx, c: &[i64], n: usize) -> PowerSeries {
        PowerSeries::new(ctx, c.iter().map(|&x| ctx.from_int(x)).collect(), n)
    }

    #[test]
    fn difference_of_squares() {
        let f = FieldCtx::prime(7).unwrap();
        let a = s(&f, &[1, 1], 3);
        let b = s(&f, &[1, -1], 3);
        assert_eq!(a.mul(&b).unwrap(), s(&f, &[1, 0, -1], 3));
    }

    #[test]
    fn monomial_power() {
        let f = FieldCtx::prime(7).unwrap();
        let t = PowerSeries::monomial(&f, 1, 5);
        assert_eq!(t.pow(2), s(&f, &[0, 0, 1], 5));
    }

    #[test]
    fn square_mod_7() {
        let f = FieldCtx::prime(7).unwrap();
        let a = s(&f, &[0, 1, 2], 4);
        assert_eq!(a.pow(2), s(&f, &[0, 0, 1, 4], 4));
    }

    #[test]
    fn precision_is_minimum() {
        let f = FieldCtx::prime(11).unwrap();
        let a = s(&f, &[1, 2, 3, 4, 5], 5);
        let b = s(&f, &[1, 1], 3);
        assert_eq!(a.mul(&b).unwrap().precision(), 3);
        assert_eq!(a.add(&b).unwrap().precision(), 3);
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = s(&FieldCtx::prime(7).unwrap(), &[1], 3);
        let b = s(&FieldCtx::prime(11).unwrap(), &[1], 3);
        assert_eq!(a.mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn inverse_and_reversion() {
        let f = FieldCtx::prime(13).unwrap();
        let a = s(&f, &[3, 1, 4, 1, 5, 9], 6);
        let one = a.mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(one, s(&f, &[1], 6));
        let b = s(&f, &[0, 2, 7, 1, 8, 2], 6);
        let r = b.reverse().unwrap();
        assert_eq!(b.compose(&r).unwrap(), PowerSeries::monomial(&f, 1, 6));
        assert_eq!(r.compose(&b).unwrap(), PowerSeries::monomial(&f, 1, 6));
    }
}
