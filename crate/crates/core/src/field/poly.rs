use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::ExactMatrix;
use super::scalar::{FieldSpec, Scalar};

/// A univariate polynomial, coefficients stored low degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The monomial `t`.
    pub fn t(field: FieldSpec) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `t - c`.
    pub fn linear(c: &Scalar) -> Self {
        let f = c.field();
        Self::new(f, vec![-c, f.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, rhs: &Poly) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.field, out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        let lead_inv = d.leading().inv().unwrap();
        if r.len() < dd + 1 {
            return (Self::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dj);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(self.field, q), Self::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Self::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&ExactMatrix::identity(self.field, n).scale(c));
        }
        acc
    }

    pub fn mul_mod(&self, rhs: &Poly, m: &Poly) -> Poly {
        self.mul(rhs).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Self::one(self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let plain = match &mag {
                Scalar::Modular { value, .. } => value.to_string(),
                other => other.to_string(),
            };
            let coef = match (i, mag.is_one()) {
                (0, _) => Some(plain),
                (_, true) => None,
                _ => Some(plain),
            };
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            match (coef, i) {
                (Some(c), 0) => write!(f, "{c}")?,
                (Some(c), _) => write!(f, "{c}{mono}")?,
                (None, _) => write!(f, "{mono}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(tI - A)` via reduction to upper Hessenberg form.
pub fn charpoly(a: &ExactMatrix) -> Poly {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let field = a.field();
    let n = a.rows();
    let mut h = a.clone();
    for m in 1..n {
        let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                let (x, y) = (h.get(i, j).clone(), h.get(m, j).clone());
                h.set(i, j, y);
                h.set(m, j, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, i).clone(), h.get(r, m).clone());
                h.set(r, i, y);
                h.set(r, m, x);
            }
        }
        let piv_inv = h.get(m, m - 1).inv().unwrap();
        for j in m + 1..n {
            let u = h.get(j, m - 1) * &piv_inv;
            if u.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = h.get(j, c) - &(&u * h.get(m, c));
                h.set(j, c, v);
            }
            for r in 0..n {
                let v = h.get(r, m) + &(&u * h.get(r, j));
                h.set(r, m, v);
            }
        }
    }
    let mut ps = vec![Poly::one(field)];
    for m in 0..n {
        let mut next = Poly::linear(h.get(m, m)).mul(&ps[m]);
        let mut prod = field.one();
        for i in (0..m).rev() {
            prod = &prod * h.get(i + 1, i);
            let c = h.get(i, m) * &prod;
            if !c.is_zero() {
                next = next.sub(&ps[i].scale(&c));
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}

/// Factors a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients low to high).
pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in square_free(&f.monic()) {
        let irr = match f.field() {
            FieldSpec::Rationals => factor_squarefree_rational(&part),
            FieldSpec::Prime(p) => factor_squarefree_modular(&part, p),
        };
        for g in irr {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += mult,
                None => out.push((g, mult)),
            }
        }
    }
    out.sort_by(|a, b| poly_key_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

/// Order on polynomials: degree first, then coefficients from the constant term up.
pub fn poly_key_cmp(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

/// Square-free decomposition of a monic polynomial: pairs `(g, i)` with `f = Π g^i`.
pub fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let mut g = f.gcd(&df);
    let mut w = f.exact_div(&g);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&g);
        let z = w.exact_div(&y);
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        g = g.exact_div(&y);
        w = y;
    }
    if g.deg() > 0 {
        let p = field.characteristic() as usize;
        assert!(p > 0, "residual inseparable part in characteristic zero");
        let root = Poly::new(field, g.coeffs.iter().step_by(p).cloned().collect());
        for (h, m) in square_free(&root.monic()) {
            out.push((h, m * p));
        }
    }
    out
}

fn factor_squarefree_modular(f: &Poly, p: u32) -> Vec<Poly> {
    let field = f.field();
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = Poly::t(field);
    let mut h = x.clone();
    let pu = BigUint::from(p);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(&pu, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            out.extend(equal_degree_split(&g, d, p));
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles of degree `d`.
fn equal_degree_split(f: &Poly, d: usize, p: u32) -> Vec<Poly> {
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (f.deg() as u64) << 8 ^ d as u64);
    let mut pending = vec![f.clone()];
    let mut done = Vec::new();
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    while let Some(g) = pending.pop() {
        if g.deg() == d {
            done.push(g);
            continue;
        }
        loop {
            let a = Poly::new(
                field,
                (0..g.deg())
                    .map(|_| field.from_i64(rng.gen_range(0..p as i64)))
                    .collect(),
            );
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut acc = a.rem(&g);
                let mut term = acc.clone();
                for _ in 1..d {
                    term = term.mul_mod(&term, &g);
                    acc = acc.add(&term);
                }
                acc
            } else {
                a.pow_mod(&exp, &g).sub(&Poly::one(field))
            };
            let c = g.gcd(&b);
            if c.deg() > 0 && c.deg() < g.deg() {
                let other = g.exact_div(&c);
                pending.push(c);
                pending.push(other.monic());
                break;
            }
        }
    }
    done
}

fn factor_squarefree_rational(f: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    for r in rational_roots(&rest) {
        let lin = Poly::linear(&r);
        out.push(lin.clone());
        rest = rest.exact_div(&lin);
    }
    out.extend(kronecker(&rest));
    out
}

/// Primitive integer polynomial proportional to `f` (positive leading coefficient).
fn integer_primitive(f: &Poly) -> Vec<BigInt> {
    let qs: Vec<BigRational> = f.coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs
        .iter()
        .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn rational_roots(f: &Poly) -> Vec<Scalar> {
    let field = f.field();
    let mut roots = Vec::new();
    let mut rest = f.clone();
    if rest.deg() == 0 {
        return roots;
    }
    while rest.coeff(0).is_zero() && rest.deg() > 0 {
        roots.push(field.zero());
        rest = rest.exact_div(&Poly::t(field));
    }
    loop {
        if rest.deg() == 0 {
            break;
        }
        let ints = integer_primitive(&rest);
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let mut found = None;
        'search: for num in divisors(&a0) {
            for den in divisors(&an) {
                for s in [1i64, -1] {
                    let q = BigRational::new(&num * BigInt::from(s), den.clone());
                    let x = Scalar::Rational(q);
                    if rest.eval(&x).is_zero() {
                        found = Some(x);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(x) => {
                rest = rest.exact_div(&Poly::linear(&x));
                roots.push(x);
            }
            None => break,
        }
    }
    roots
}

/// Kronecker's method on a monic rational polynomial with no rational roots.
fn kronecker(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    if f.deg() <= 3 {
        return if f.deg() == 0 { vec![] } else { vec![f.clone()] };
    }
    let ints = integer_primitive(f);
    let eval_int = |x: i64| -> BigInt {
        let xb = BigInt::from(x);
        ints.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xb + c)
    };
    for d in 2..=f.deg() / 2 {
        let mut pts: Vec<(i64, BigInt)> = (0..(4 * d as i64 + 8))
            .map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })
            .map(|x| (x, eval_int(x)))
            .collect();
        pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.abs().cmp(&b.0.abs())));
        let pts: Vec<(i64, BigInt)> = pts.into_iter().take(d + 1).collect();
        let choices: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(i, (_, v))| {
                let ds = divisors(v);
                if i == 0 {
                    ds
                } else {
                    ds.iter().flat_map(|x| [x.clone(), -x]).collect()
                }
            })
            .collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            let vals: Vec<Scalar> = idx
                .iter()
                .enumerate()
                .map(|(i, &k)| Scalar::Rational(BigRational::from_integer(choices[i][k].clone())))
                .collect();
            let xs: Vec<Scalar> = pts.iter().map(|(x, _)| field.from_i64(*x)).collect();
            let g = interpolate(field, &xs, &vals);
            if g.deg() == d && g.divides(f) {
                let g = g.monic();
                let mut out = kronecker(&g);
                out.extend(kronecker(&f.exact_div(&g)));
                return out;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    vec![f.clone()]
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(field: FieldSpec, xs: &[Scalar], ys: &[Scalar]) -> Poly {
    let mut acc = Poly::zero(field);
    for i in 0..xs.len() {
        let mut basis = Poly::one(field);
        let mut denom = field.one();
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::linear(&xs[j]));
            denom = &denom * &(&xs[i] - &xs[j]);
        }
        acc = acc.add(&basis.scale(&(&ys[i] / &denom)));
    }
    acc
}
