//! Bivariate real polynomials, dense row-major storage. These carry the
//! symbolic side of chart analysis: metric coefficients, Laplacians and
//! affine substitutions all stay polynomial identities here.

use crate::scalar::Scalar;

/// `coeff(i, j)` multiplies `u^i v^j`. Invariant: trailing zero rows/columns
/// trimmed; the zero polynomial has dims (0, 0).
#[derive(Clone, PartialEq)]
pub struct Poly2<T: Scalar> {
    nu: usize,
    nv: usize,
    c: Vec<T>,
}

impl<T: Scalar> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 { nu: 0, nv: 0, c: Vec::new() }
    }

    pub fn constant(v: T) -> Self {
        Self::build(1, 1, vec![v])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// u^i v^j with the given coefficient.
    pub fn monomial(i: usize, j: usize, v: T) -> Self {
        let mut c = vec![T::zero(); (i + 1) * (j + 1)];
        c[i * (j + 1) + j] = v;
        Self::build(i + 1, j + 1, c)
    }

    pub fn var_u() -> Self {
        Self::monomial(1, 0, T::one())
    }

    pub fn var_v() -> Self {
        Self::monomial(0, 1, T::one())
    }

    pub fn from_terms(terms: &[(usize, usize, T)]) -> Self {
        let nu = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let nv = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut c = vec![T::zero(); nu * nv];
        for (i, j, v) in terms {
            c[i * nv + j] = c[i * nv + j].clone() + v.clone();
        }
        Self::build(nu, nv, c)
    }

    /// Terms with (num, den) rational coefficients, convenient for fixtures.
    pub fn from_ratio_terms(terms: &[(usize, usize, i64, i64)]) -> Self {
        let owned: Vec<(usize, usize, T)> = terms
            .iter()
            .map(|&(i, j, n, d)| (i, j, T::ratio(n, d)))
            .collect();
        Self::from_terms(&owned)
    }

    fn build(nu: usize, nv: usize, c: Vec<T>) -> Self {
        debug_assert_eq!(c.len(), nu * nv);
        let mut p = Poly2 { nu, nv, c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        let mut nu = self.nu;
        while nu > 0 && (0..self.nv).all(|j| self.c[(nu - 1) * self.nv + j].negligible()) {
            nu -= 1;
        }
        let mut nv = if nu == 0 { 0 } else { self.nv };
        while nv > 0 && (0..nu).all(|i| self.c[i * self.nv + nv - 1].negligible()) {
            nv -= 1;
        }
        if nu == 0 || nv == 0 {
            *self = Poly2 { nu: 0, nv: 0, c: Vec::new() };
            return;
        }
        if nu == self.nu && nv == self.nv {
            return;
        }
        let mut out = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            for j in 0..nv {
                out.push(self.c[i * self.nv + j].clone());
            }
        }
        *self = Poly2 { nu, nv, c: out };
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// (degree in u, degree in v); (0, 0) for constants and the zero polynomial.
    pub fn degrees(&self) -> (usize, usize) {
        (self.nu.saturating_sub(1), self.nv.saturating_sub(1))
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i < self.nu && j < self.nv {
            self.c[i * self.nv + j].clone()
        } else {
            T::zero()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.negligible())
            .map(move |(k, v)| (k / self.nv, k % self.nv, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let nu = self.nu.max(other.nu);
        let nv = self.nv.max(other.nv);
        if nu == 0 {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            for j in 0..nv {
                c.push(self.coeff(i, j) + other.coeff(i, j));
            }
        }
        Self::build(nu, nv, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            nu: self.nu,
            nv: self.nv,
            c: self.c.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::build(
            self.nu,
            self.nv,
            self.c.iter().map(|v| v.clone() * s.clone()).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let nu = self.nu + other.nu - 1;
        let nv = self.nv + other.nv - 1;
        let mut c = vec![T::zero(); nu * nv];
        for (i1, j1, a) in self.terms() {
            for (i2, j2, b) in other.terms() {
                let k = (i1 + i2) * nv + (j1 + j2);
                c[k] = c[k].clone() + a.clone() * b.clone();
            }
        }
        Self::build(nu, nv, c)
    }

    pub fn du(&self) -> Self {
        if self.nu <= 1 {
            return Self::zero();
        }
        let nu = self.nu - 1;
        let mut c = Vec::with_capacity(nu * self.nv);
        for i in 1..self.nu {
            for j in 0..self.nv {
                c.push(self.c[i * self.nv + j].clone() * T::from_int(i as i64));
            }
        }
        Self::build(nu, self.nv, c)
    }

    pub fn dv(&self) -> Self {
        if self.nv <= 1 {
            return Self::zero();
        }
        let nv = self.nv - 1;
        let mut c = Vec::with_capacity(self.nu * nv);
        for i in 0..self.nu {
            for j in 1..self.nv {
                c.push(self.c[i * self.nv + j].clone() * T::from_int(j as i64));
            }
        }
        Self::build(self.nu, nv, c)
    }

    /// Laplacian d^2/du^2 + d^2/dv^2.
    pub fn laplacian(&self) -> Self {
        self.du().du().add(&self.dv().dv())
    }

    /// Multiply by u (row shift); cheaper than a general product.
    pub fn shift_u(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![T::zero(); self.nv];
        c.extend(self.c.iter().cloned());
        Self::build(self.nu + 1, self.nv, c)
    }

    /// Multiply by v (column shift).
    pub fn shift_v(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let nv = self.nv + 1;
        let mut c = Vec::with_capacity(self.nu * nv);
        for i in 0..self.nu {
            c.push(T::zero());
            for j in 0..self.nv {
                c.push(self.c[i * self.nv + j].clone());
            }
        }
        Self::build(self.nu, nv, c)
    }

    /// Two-stage Horner evaluation.
    pub fn eval(&self, u: &T, v: &T) -> T {
        let mut acc = T::zero();
        for i in (0..self.nu).rev() {
            let mut row = T::zero();
            for j in (0..self.nv).rev() {
                row = row * v.clone() + self.c[i * self.nv + j].clone();
            }
            acc = acc * u.clone() + row;
        }
        acc
    }

    /// General substitution u <- p(u,v), v <- q(u,v) via power tables.
    pub fn compose(&self, p: &Self, q: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut upow: Vec<Poly2<T>> = Vec::with_capacity(self.nu);
        upow.push(Self::one());
        for _ in 1..self.nu {
            let last = upow.last().unwrap().mul(p);
            upow.push(last);
        }
        let mut vpow: Vec<Poly2<T>> = Vec::with_capacity(self.nv);
        vpow.push(Self::one());
        for _ in 1..self.nv {
            let last = vpow.last().unwrap().mul(q);
            vpow.push(last);
        }
        let mut out = Self::zero();
        for (i, j, a) in self.terms() {
            out = out.add(&upow[i].mul(&vpow[j]).scale(a));
        }
        out
    }

    /// Coefficients of the restriction to v = 0, i.e. the first column.
    pub fn column_v0(&self) -> Vec<T> {
        (0..self.nu).map(|i| self.coeff(i, 0)).collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.c
            .iter()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly2<U> {
        Poly2::build(self.nu, self.nv, self.c.iter().map(f).collect())
    }
}

impl<T: Scalar> std::fmt::Debug for Poly2<T> {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(i, j, v)| format!("{} u^{} v^{}", v, i, j))
            .collect();
        write!(fm, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type P = Poly2<Rat>;

    fn r(n: i64, d: i64) -> Rat {
        Rat::ratio(n, d)
    }

    #[test]
    fn product_expands_cross_terms() {
        // (u + v)(u - v) = u^2 - v^2
        let s = P::var_u().add(&P::var_v());
        let d = P::var_u().sub(&P::var_v());
        let expect = P::from_ratio_terms(&[(2, 0, 1, 1), (0, 2, -1, 1)]);
        assert_eq!(s.mul(&d), expect);
    }

    #[test]
    fn partials_and_laplacian() {
        // p = u^3 v + u v^3: lap = 6uv + 6uv = 12uv
        let p = P::from_ratio_terms(&[(3, 1, 1, 1), (1, 3, 1, 1)]);
        assert_eq!(p.laplacian(), P::from_ratio_terms(&[(1, 1, 12, 1)]));
        assert_eq!(
            p.du(),
            P::from_ratio_terms(&[(2, 1, 3, 1), (0, 3, 1, 1)])
        );
    }

    #[test]
    fn harmonic_pair_has_zero_laplacian() {
        // Re (u+iv)^3 = u^3 - 3uv^2
        let p = P::from_ratio_terms(&[(3, 0, 1, 1), (1, 2, -3, 1)]);
        assert!(p.laplacian().is_zero());
    }

    #[test]
    fn eval_agrees_with_term_sum() {
        let p = P::from_ratio_terms(&[(0, 0, 1, 2), (2, 1, -3, 4), (1, 3, 5, 6)]);
        let (u, v) = (r(2, 3), r(-7, 5));
        let direct = r(1, 2)
            + r(-3, 4) * u.clone() * u.clone() * v.clone()
            + r(5, 6) * u.clone() * v.clone() * v.clone() * v.clone();
        assert_eq!(p.eval(&u, &v), direct);
    }

    #[test]
    fn affine_compose_matches_pointwise() {
        let p = P::from_ratio_terms(&[(2, 0, 1, 1), (1, 1, -2, 1), (0, 2, 3, 1)]);
        // u <- 2u' + v' - 1, v <- u' - v' + 2
        let pu = P::from_ratio_terms(&[(1, 0, 2, 1), (0, 1, 1, 1), (0, 0, -1, 1)]);
        let pv = P::from_ratio_terms(&[(1, 0, 1, 1), (0, 1, -1, 1), (0, 0, 2, 1)]);
        let q = p.compose(&pu, &pv);
        for (a, b) in [(r(1, 3), r(2, 7)), (r(-1, 2), r(5, 4))] {
            let u_sub = pu.eval(&a, &b);
            let v_sub = pv.eval(&a, &b);
            assert_eq!(q.eval(&a, &b), p.eval(&u_sub, &v_sub));
        }
    }

    #[test]
    fn shifts_match_monomial_products() {
        let p = P::from_ratio_terms(&[(1, 2, 7, 3)]);
        assert_eq!(p.shift_u(), p.mul(&P::var_u()));
        assert_eq!(p.shift_v(), p.mul(&P::var_v()));
    }

    #[test]
    fn trim_drops_cancelled_terms() {
        let p = P::from_ratio_terms(&[(3, 3, 1, 1)]);
        let q = p.sub(&p);
        assert!(q.is_zero());
        assert_eq!(q.degrees(), (0, 0));
        let f = Poly2::<f64>::from_terms(&[(2, 2, 1e-16), (0, 0, 1.0)]);
        assert_eq!(f.degrees(), (0, 0));
    }

    #[test]
    fn column_restriction_reads_u_coefficients() {
        let p = P::from_ratio_terms(&[(0, 0, 1, 1), (2, 0, -5, 2), (1, 1, 9, 1)]);
        assert_eq!(p.column_v0(), vec![r(1, 1), r(0, 1), r(-5, 2)]);
    }
}
