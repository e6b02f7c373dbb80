//! Truncated formal power series with exact integer coefficients and zero
//! constant term: composition, compositional inversion, rational-function
//! expansion, and the inversion-theorem checks.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::trees::{count_shapes, Alphabet, Assoc, Label, Pattern};

/// A series c_1 t + c_2 t^2 + ... + c_N t^N, exact modulo t^{N+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    order: usize,
    // coeffs[i] is the coefficient of t^{i+1}
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(order: usize) -> Self {
        IntSeries {
            order,
            coeffs: vec![BigInt::zero(); order],
        }
    }

    /// The identity series t.
    pub fn identity(order: usize) -> Self {
        let mut s = IntSeries::zero(order);
        if order >= 1 {
            s.coeffs[0] = BigInt::one();
        }
        s
    }

    /// From coefficients of t^1 ... t^N.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let order = coeffs.len();
        IntSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of t^n (1-based exponent; zero beyond the order).
    pub fn coeff(&self, n: usize) -> BigInt {
        if n == 0 || n > self.order {
            BigInt::zero()
        } else {
            self.coeffs[n - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> IntSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, BigInt::zero());
        IntSeries { order, coeffs }
    }

    pub fn add(&self, other: &IntSeries) -> Result<IntSeries> {
        self.check_order(other)?;
        Ok(IntSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &IntSeries) -> Result<IntSeries> {
        self.check_order(other)?;
        Ok(IntSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &IntSeries) -> Result<IntSeries> {
        self.check_order(other)?;
        let n = self.order;
        let mut coeffs = vec![BigInt::zero(); n];
        for i in 1..=n {
            if self.coeffs[i - 1].is_zero() {
                continue;
            }
            for j in 1..=n - i {
                if other.coeffs[j - 1].is_zero() {
                    continue;
                }
                coeffs[i + j - 1] += &self.coeffs[i - 1] * &other.coeffs[j - 1];
            }
        }
        Ok(IntSeries { order: n, coeffs })
    }

    fn check_order(&self, other: &IntSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    /// f(g(t)) mod t^{N+1}, by Horner evaluation in the truncated
    /// polynomial ring. Valid because g has zero constant term.
    pub fn compose(&self, inner: &IntSeries) -> Result<IntSeries> {
        self.check_order(inner)?;
        let n = self.order;
        // work on t^0-based vectors of length n + 1
        let g = {
            let mut v = vec![BigInt::zero(); n + 1];
            v[1..].clone_from_slice(&inner.coeffs);
            v
        };
        // acc = c_N; acc = acc * g + c_i for i = N-1 .. 1; result = acc * g
        let mut acc = vec![BigInt::zero(); n + 1];
        if n >= 1 {
            acc[0] = self.coeffs[n - 1].clone();
        }
        for i in (1..n).rev() {
            acc = poly_mul_trunc(&acc, &g, n + 1);
            acc[0] += &self.coeffs[i - 1];
        }
        let result = poly_mul_trunc(&acc, &g, n + 1);
        debug_assert!(result[0].is_zero());
        Ok(IntSeries {
            order: n,
            coeffs: result[1..].to_vec(),
        })
    }

    /// The compositional inverse g with f(g(t)) = g(f(t)) = t mod t^{N+1}.
    /// Requires linear coefficient +-1 so the inverse stays integral.
    pub fn invert(&self) -> Result<IntSeries> {
        let n = self.order;
        if n == 0 {
            return Ok(IntSeries::zero(0));
        }
        let c1 = &self.coeffs[0];
        if !(c1.magnitude() == &BigUint::one()) {
            return Err(Error::NonUnitLinear(c1.to_string()));
        }
        // solve coefficient by coefficient: the unknown b_d enters the
        // t^d coefficient of f(g) linearly with factor c_1
        let mut g = IntSeries::zero(n);
        g.coeffs[0] = c1.clone(); // 1/c1 = c1 for c1 = +-1
        for d in 2..=n {
            let partial = self.compose(&g)?;
            let excess = partial.coeff(d); // want 0 here
            g.coeffs[d - 1] = -excess * c1;
        }
        debug_assert!(self.compose(&g).unwrap() == IntSeries::identity(n));
        Ok(g)
    }
}

impl fmt::Display for IntSeries {
    /// Sparse signed monomial list, e.g. `-t + t^2 - 2t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = i + 1;
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mag != &BigUint::one() {
                write!(f, "{mag}")?;
            }
            if exp == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{exp}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Product of two t^0-based coefficient vectors, truncated to `len` terms.
fn poly_mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// The alternating series sum (-1)^{n+1} a_n t^{n+1} truncated to order N.
pub fn alternating_series(counts: &[BigUint], order: usize) -> IntSeries {
    lacunary_series(counts, 2, LacunaryVariant::F, order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LacunaryVariant {
    /// sum (-1)^{n+1} a_n t^{(k-1)n+1}
    F,
    /// -sum (-1)^{(k+1)n} a_n t^{(k-1)n+1}; equals F for even k, all signs
    /// negative for odd k
    G,
}

/// Lacunary expansion supported on exponents congruent to 1 mod (k-1).
pub fn lacunary_series(
    counts: &[BigUint],
    arity: usize,
    variant: LacunaryVariant,
    order: usize,
) -> IntSeries {
    let k = arity;
    let mut s = IntSeries::zero(order);
    for (n, a) in counts.iter().enumerate() {
        let exp = (k - 1) * n + 1;
        if exp > order {
            break;
        }
        let val = BigInt::from(a.clone());
        let negative = match variant {
            LacunaryVariant::F => (n + 1) % 2 == 1,
            LacunaryVariant::G => {
                // sign of the term is -(-1)^{(k+1)n}
                (k + 1) * n % 2 == 0
            }
        };
        s.coeffs[exp - 1] = if negative { -val } else { val };
    }
    s
}

/// A ratio of integer polynomials in t (coefficient index = exponent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalForm {
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Self {
        RationalForm {
            numerator: numerator.into_iter().map(BigInt::from).collect(),
            denominator: denominator.into_iter().map(BigInt::from).collect(),
        }
    }

    /// Exact Maclaurin expansion to order N. The denominator must have
    /// constant term +-1 and the quotient must have zero constant term.
    pub fn expand(&self, order: usize) -> Result<IntSeries> {
        let den0 = self
            .denominator
            .first()
            .cloned()
            .unwrap_or_else(BigInt::zero);
        if den0.magnitude() != &BigUint::one() {
            return Err(Error::NonUnitDenominator(den0.to_string()));
        }
        let num = |j: usize| self.numerator.get(j).cloned().unwrap_or_else(BigInt::zero);
        let den = |j: usize| {
            self.denominator
                .get(j)
                .cloned()
                .unwrap_or_else(BigInt::zero)
        };
        // solve s * den = num term by term; division by den0 = +-1 is exact
        let mut s = vec![BigInt::zero(); order + 1];
        for j in 0..=order {
            let mut acc = num(j);
            for i in 1..=j {
                acc -= den(i) * &s[j - i];
            }
            s[j] = acc * &den0; // 1/den0 = den0
        }
        if !s[0].is_zero() {
            return Err(Error::Invariant(format!(
                "rational form has nonzero constant term {}",
                s[0]
            )));
        }
        Ok(IntSeries::from_coeffs(s[1..].to_vec()))
    }
}

/// Outcome of composing the two counted series of a pattern set.
#[derive(Debug, Clone)]
pub struct InversionReport {
    /// f-variant lacunary series of the X counts.
    pub f_x: IntSeries,
    /// g-variant lacunary series of the Z counts.
    pub g_z: IntSeries,
    /// g(Z, f(X, t)).
    pub composite: IntSeries,
    /// composite minus t; zero exactly when the theorem holds.
    pub residual: IntSeries,
    pub holds: bool,
}

/// Check g(Z, f(X, t)) = t mod t^{N+1} on counted coefficients. For binary
/// trees this is the plain alternating-series statement f(Z, f(X, t)) = t.
pub fn verify_inversion(x: &PatternSet, order: usize) -> Result<InversionReport> {
    let k = x.arity();
    let z = x.complement();
    let max_n = if order == 0 { 0 } else { (order - 1) / (k - 1) };
    let a = x.coefficient_sequence(max_n);
    let b = z.coefficient_sequence(max_n);
    let f_x = lacunary_series(&a, k, LacunaryVariant::F, order);
    let g_z = lacunary_series(&b, k, LacunaryVariant::G, order);
    let composite = g_z.compose(&f_x)?;
    let residual = composite.sub(&IntSeries::identity(order))?;
    let holds = residual.is_zero();
    Ok(InversionReport {
        f_x,
        g_z,
        composite,
        residual,
        holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalEquation {
    Catalan,
    SuperCatalan,
}

/// Verify the classical functional equation on counted coefficients to
/// order 12: t c(t)^2 - c(t) + 1 = 0 for the Catalan series, or
/// 2t C(t)^2 - (1 + t) C(t) + 1 = 0 for the super-Catalan series.
pub fn functional_equation_check(which: FunctionalEquation) -> bool {
    const N: usize = 12;
    let coeffs: Vec<BigInt> = match which {
        FunctionalEquation::Catalan => (0..=N)
            .map(|n| BigInt::from(count_shapes(2, n)))
            .collect(),
        FunctionalEquation::SuperCatalan => {
            // super-Catalan numbers via the m=2 pattern set whose classes
            // have 2 C_n elements for n >= 1
            let alphabet = Alphabet::numeric(2);
            let z = PatternSet::new(
                alphabet,
                2,
                vec![
                    Pattern::binary(Assoc::L, Label(0), Label(0)),
                    Pattern::binary(Assoc::R, Label(1), Label(1)),
                ],
            )
            .expect("well-formed pattern set");
            let x = z.complement();
            (0..=N)
                .map(|n| {
                    let a = BigInt::from(x.count_dp(n));
                    if n == 0 {
                        a
                    } else {
                        a / 2
                    }
                })
                .collect()
        }
    };
    functional_equation_holds(which, &coeffs)
}

/// The polynomial identity itself, on caller-supplied ordinary (non
/// alternating) coefficients c_0, c_1, ....
pub fn functional_equation_holds(which: FunctionalEquation, coeffs: &[BigInt]) -> bool {
    let n = coeffs.len();
    let c = coeffs.to_vec();
    let c2 = poly_mul_trunc(&c, &c, n);
    // t * c^2
    let mut lhs = vec![BigInt::zero(); n];
    for i in 1..n {
        lhs[i] = c2[i - 1].clone();
    }
    match which {
        FunctionalEquation::Catalan => {
            // t c^2 - c + 1
            for i in 0..n {
                lhs[i] -= &c[i];
            }
            lhs[0] += BigInt::one();
        }
        FunctionalEquation::SuperCatalan => {
            // 2t C^2 - (1 + t) C + 1
            for v in lhs.iter_mut() {
                *v *= BigInt::from(2);
            }
            for i in 0..n {
                lhs[i] -= &c[i];
            }
            for i in 1..n {
                lhs[i] -= &c[i - 1];
            }
            lhs[0] += BigInt::one();
        }
    }
    lhs.iter().all(|v| v.is_zero())
}
