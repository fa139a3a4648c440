//! Unit lower-triangular matrices and the machinery around them: the linear
//! system whose unknowns are the higher derivatives of the generalized Dawson
//! function at 0, a closed-form expression for every cofactor, and bordered
//! determinants via the Cauchy expansion.
//!
//! Matrix indices in this module's public API are 1-based, matching standard
//! linear-algebra notation; the translation to 0-based storage happens in
//! [`UniTriangular::entry`] and nowhere else.

use crate::binomial::PascalTriangle;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::DerivativeSeq;

/// Lower-triangular square matrix with unit diagonal. Its determinant is 1
/// identically. Order 0 is permitted: the empty matrix that borders degenerate
/// 1×1 systems.
#[derive(Clone, Debug, PartialEq)]
pub struct UniTriangular<T> {
    order: usize,
    /// below[r - 2] holds the strictly-lower entries of 1-based row r,
    /// columns 1..=r-1.
    below: Vec<Vec<T>>,
}

impl<T: Scalar> UniTriangular<T> {
    /// Matrix with every strictly-lower entry zero.
    pub fn identity(order: usize) -> Self {
        let below = (2..=order).map(|r| vec![T::zero(); r - 1]).collect();
        UniTriangular { order, below }
    }

    /// Build from strictly-lower rows: `rows[i]` supplies 1-based row i+2 and
    /// must have length i+1. An empty list gives the 1×1 identity.
    pub fn from_lower_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::BadMatrix(format!(
                    "lower row {} must have {} entries, got {}",
                    i + 2,
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(UniTriangular {
            order: rows.len() + 1,
            below: rows,
        })
    }

    /// Build from dense rows, validating the unit diagonal and zero strict
    /// upper part.
    pub fn from_dense(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::BadMatrix("empty matrix".into()));
        }
        let mut below = Vec::with_capacity(order.saturating_sub(1));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::BadMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    order
                )));
            }
            if !row[i].is_one() {
                return Err(Error::BadMatrix(format!(
                    "diagonal entry ({r},{r}) must be 1, got {v}",
                    r = i + 1,
                    v = row[i]
                )));
            }
            for (j, v) in row.iter().enumerate().skip(i + 1) {
                if !v.is_zero() {
                    return Err(Error::BadMatrix(format!(
                        "upper entry ({},{}) must be 0, got {v}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if i > 0 {
                below.push(row[..i].to_vec());
            }
        }
        Ok(UniTriangular { order, below })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 1-based (row, col): 1 on the diagonal, 0 above it.
    pub fn entry(&self, r: usize, s: usize) -> T {
        assert!(
            (1..=self.order).contains(&r) && (1..=self.order).contains(&s),
            "entry ({r},{s}) out of range for order {}",
            self.order
        );
        if s > r {
            T::zero()
        } else if s == r {
            T::one()
        } else {
            self.below[r - 2][s - 1].clone()
        }
    }

    /// Set a strictly-lower entry at 1-based (row, col).
    pub fn set_entry(&mut self, r: usize, s: usize, value: T) -> Result<()> {
        if !(1..=self.order).contains(&r) || !(1..=self.order).contains(&s) || s >= r {
            return Err(Error::IndexOutOfRange {
                what: format!("strictly-lower entry ({r},{s}) of order {}", self.order),
            });
        }
        self.below[r - 2][s - 1] = value;
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (1..=self.order)
            .map(|r| (1..=self.order).map(|s| self.entry(r, s)).collect())
            .collect()
    }

    /// Plain-text dump: first line the order, then the dense rows with
    /// space-separated entries.
    pub fn dump(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.to_dense() {
            let line: Vec<String> = row.iter().map(T::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the [`dump`](Self::dump) format.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let order: usize = lines
            .next()
            .ok_or_else(|| Error::BadMatrix("empty input".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::BadMatrix("first line must be the order".into()))?;
        if order == 0 {
            return Err(Error::BadMatrix("order must be at least 1".into()));
        }
        let mut rows = Vec::with_capacity(order);
        for i in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| Error::BadMatrix(format!("missing row {}", i + 1)))?;
            let row: Vec<T> = line
                .split_whitespace()
                .map(|tok| {
                    T::parse_scalar(tok).map_err(|reason| {
                        Error::BadMatrix(format!("row {}: {reason}", i + 1))
                    })
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::BadMatrix(format!(
                "trailing content after {order} rows"
            )));
        }
        Self::from_dense(rows)
    }
}

/// Matrix bordered by a column `alpha`, a row `beta`, and a corner scalar:
/// the structure whose determinant the Cauchy expansion computes from the
/// core's cofactors.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderedSystem<T> {
    core: UniTriangular<T>,
    alpha: Vec<T>,
    beta: Vec<T>,
    corner: T,
}

impl<T: Scalar> BorderedSystem<T> {
    pub fn new(core: UniTriangular<T>, alpha: Vec<T>, beta: Vec<T>, corner: T) -> Result<Self> {
        let n = core.order();
        if alpha.len() != n || beta.len() != n {
            return Err(Error::BadArgument(format!(
                "border lengths ({}, {}) must match core order {n}",
                alpha.len(),
                beta.len()
            )));
        }
        Ok(BorderedSystem {
            core,
            alpha,
            beta,
            corner,
        })
    }

    pub fn core(&self) -> &UniTriangular<T> {
        &self.core
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    pub fn beta(&self) -> &[T] {
        &self.beta
    }

    pub fn corner(&self) -> &T {
        &self.corner
    }

    /// Assemble the dense (n+1)×(n+1) matrix, for oracle checks.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.core.order();
        let mut rows = Vec::with_capacity(n + 1);
        for r in 1..=n {
            let mut row: Vec<T> = (1..=n).map(|s| self.core.entry(r, s)).collect();
            row.push(self.alpha[r - 1].clone());
            rows.push(row);
        }
        let mut last = self.beta.clone();
        last.push(self.corner.clone());
        rows.push(last);
        rows
    }
}

/// System matrix and constants column for the unknowns
/// (D^(2)(0), ..., D^(k+1)(0)):
///
/// ```text
/// a[i][j] = C(i, j+1)·b^(i-j-1)(0)   for i > j,   rhs[i] = -i·b^(i-1)(0)
/// ```
///
/// The constants column reaches b^(k-1)(0), so `b_derivs.len() >= k`.
pub fn build_system<T: Scalar>(
    b_derivs: &DerivativeSeq<T>,
    k: usize,
) -> Result<(UniTriangular<T>, Vec<T>)> {
    if k == 0 {
        return Err(Error::BadArgument("system order must be at least 1".into()));
    }
    if b_derivs.len() < k {
        return Err(Error::InsufficientDerivatives {
            needed: k,
            got: b_derivs.len(),
        });
    }
    let b = b_derivs.values();
    let pascal = PascalTriangle::up_to(k);
    let mut matrix = UniTriangular::identity(k);
    for i in 2..=k {
        for j in 1..i {
            let v = T::from_bigint(pascal.choose(i, j + 1)) * b[i - j - 1].clone();
            matrix.set_entry(i, j, v)?;
        }
    }
    let rhs = (1..=k)
        .map(|i| -(T::from_usize(i).expect("small integer") * b[i - 1].clone()))
        .collect();
    Ok((matrix, rhs))
}

/// Solve A·x = rhs by forward substitution. The unit diagonal makes the solve
/// division-free, hence exact in rational mode.
pub fn forward_solve<T: Scalar>(a: &UniTriangular<T>, rhs: &[T]) -> Result<Vec<T>> {
    if rhs.len() != a.order() {
        return Err(Error::BadArgument(format!(
            "rhs length {} must match order {}",
            rhs.len(),
            a.order()
        )));
    }
    let mut x: Vec<T> = Vec::with_capacity(a.order());
    for i in 1..=a.order() {
        let mut v = rhs[i - 1].clone();
        for (j, xj) in x.iter().enumerate() {
            v = v - a.entry(i, j + 1) * xj.clone();
        }
        x.push(v);
    }
    Ok(x)
}

/// Visit every strictly decreasing index chain n > p₁ > ⋯ > p_s = 0 as the
/// slice [p₁, …, p_s]. For fixed length s there are C(n-1, s-1) chains,
/// 2^(n-1) in total.
pub fn for_each_chain(n: usize, visit: &mut dyn FnMut(&[usize])) {
    fn descend(from: usize, chain: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        for p in (0..from).rev() {
            chain.push(p);
            if p == 0 {
                visit(chain);
            } else {
                descend(p, chain, visit);
            }
            chain.pop();
        }
    }
    let mut chain = Vec::with_capacity(n);
    descend(n, &mut chain, visit);
}

/// Number of index chains of each length for offset `n`: entry s-1 counts
/// the length-s chains.
pub fn chain_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n];
    for_each_chain(n, &mut |chain| counts[chain.len() - 1] += 1);
    counts
}

/// Cofactor Δ(i, i+n) of a unit lower-triangular matrix by the closed form
///
/// ```text
/// C(i,n) = Σ_{s=1..n} (-1)^s Σ_{n>p₁>⋯>p_s=0} c[i+n][i+p₁]·c[i+p₁][i+p₂]⋯c[i+p_{s-1}][i+p_s]
/// ```
///
/// enumerated as a depth-first descent over strictly decreasing indices
/// ending at 0. Requires 1 ≤ i ≤ order-1 and 1 ≤ n ≤ order-i.
pub fn cofactor_closed_form<T: Scalar>(c: &UniTriangular<T>, i: usize, n: usize) -> Result<T> {
    let order = c.order();
    if i < 1 || n < 1 || i + n > order {
        return Err(Error::IndexOutOfRange {
            what: format!("cofactor C({i},{n}) of an order-{order} matrix"),
        });
    }
    let mut total = T::zero();
    for_each_chain(n, &mut |chain| {
        let mut prod = c.entry(i + n, i + chain[0]);
        for w in chain.windows(2) {
            prod = prod * c.entry(i + w[0], i + w[1]);
        }
        if chain.len() % 2 == 1 {
            prod = -prod;
        }
        total = total.clone() + prod;
    });
    Ok(total)
}

/// Cofactor Δ(r, s) by definition: (-1)^(r+s) times the determinant of the
/// matrix with row r and column s deleted. Dense elimination, exact in
/// rational mode; the independent oracle for [`cofactor_closed_form`].
pub fn cofactor_oracle<T: Scalar>(c: &UniTriangular<T>, r: usize, s: usize) -> Result<T> {
    let order = c.order();
    if !(1..=order).contains(&r) || !(1..=order).contains(&s) {
        return Err(Error::IndexOutOfRange {
            what: format!("cofactor ({r},{s}) of an order-{order} matrix"),
        });
    }
    let dense = c.to_dense();
    let minor: Vec<Vec<T>> = dense
        .iter()
        .enumerate()
        .filter(|(ri, _)| ri + 1 != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(si, _)| si + 1 != s)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    let det = det_dense(&minor);
    Ok(if (r + s) % 2 == 0 { det } else { -det })
}

/// Determinant by Gaussian elimination with first-nonzero pivoting. Exact
/// over rationals; adequate over floats at the small orders the oracles run
/// at. The empty matrix has determinant 1.
pub fn det_dense<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut w: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !w[r][col].is_zero()) {
            Some(p) => p,
            None => return T::zero(),
        };
        if pivot != col {
            w.swap(pivot, col);
            det = -det;
        }
        let inv = T::one() / w[col][col].clone();
        for r in col + 1..n {
            if w[r][col].is_zero() {
                continue;
            }
            let factor = w[r][col].clone() * inv.clone();
            for c in col..n {
                let sub = factor.clone() * w[col][c].clone();
                w[r][c] = w[r][c].clone() - sub;
            }
        }
        det = det * w[col][col].clone();
    }
    det
}

/// Determinant of a bordered system by the Cauchy expansion:
///
/// ```text
/// det = corner·det(core) - Σ_{r,s} α_r β_s Δ(r,s)
/// ```
///
/// with det(core) = 1 for a unitriangular core and Δ taken from the closed
/// form (Δ(r,s) = 0 below the diagonal, 1 on it). An empty core leaves just
/// the corner.
pub fn bordered_det<T: Scalar>(sys: &BorderedSystem<T>) -> T {
    let n = sys.core.order();
    let mut det = sys.corner.clone();
    for r in 1..=n {
        for s in r..=n {
            let delta = if s == r {
                T::one()
            } else {
                cofactor_closed_form(&sys.core, r, s - r).expect("indices in range")
            };
            det = det - sys.alpha[r - 1].clone() * sys.beta[s - 1].clone() * delta;
        }
    }
    det
}

/// D^(k+1)(0) as the determinant of the system matrix with its last column
/// replaced by the constants — evaluated through [`bordered_det`] with core
/// A_(k-1), border column the order-(k-1) constants, border row the last
/// system row, and corner -k·b^(k-1)(0).
pub fn dawson_derivative_cramer<T: Scalar>(b_derivs: &DerivativeSeq<T>, k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::BadArgument("k must be at least 1".into()));
    }
    if b_derivs.len() < k {
        return Err(Error::InsufficientDerivatives {
            needed: k,
            got: b_derivs.len(),
        });
    }
    let b = b_derivs.values();
    let corner = -(T::from_usize(k).expect("small integer") * b[k - 1].clone());
    let (core, alpha) = if k >= 2 {
        build_system(b_derivs, k - 1)?
    } else {
        (UniTriangular::identity(0), Vec::new())
    };
    let pascal = PascalTriangle::up_to(k);
    let beta: Vec<T> = (1..k)
        .map(|j| T::from_bigint(pascal.choose(k, j + 1)) * b[k - j - 1].clone())
        .collect();
    let sys = BorderedSystem::new(core, alpha, beta, corner)?;
    Ok(bordered_det(&sys))
}
