//! Arithmetic in `K[t]/(h)` for squarefree `h`, with dynamic evaluation:
//! whenever a computation needs to invert a zero divisor, the modulus is split
//! and the computation is rerun on each factor.

use super::poly::MultiPoly;
use super::scalar::{Field, Scalar};
use super::univariate::UniPoly;

/// A nontrivial monic factor of the current modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split(pub UniPoly);

pub type SplitResult<T> = std::result::Result<T, Split>;

#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: UniPoly,
}

pub enum Inverse {
    Zero,
    Unit(UniPoly),
}

impl ResidueRing {
    pub fn new(modulus: UniPoly) -> Self {
        assert!(modulus.deg0() >= 1, "residue ring modulus must be nonconstant");
        ResidueRing { modulus: modulus.monic() }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn field(&self) -> Field {
        self.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }

    pub fn constant(&self, c: &Scalar) -> UniPoly {
        UniPoly::constant(c.clone())
    }

    pub fn zero(&self) -> UniPoly {
        UniPoly::zero(self.field())
    }

    pub fn one(&self) -> UniPoly {
        UniPoly::one(self.field())
    }

    /// The generator `t` (reduced).
    pub fn theta(&self) -> UniPoly {
        self.reduce(&UniPoly::x(self.field()))
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a + b
    }

    pub fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a - b
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    pub fn is_zero(&self, a: &UniPoly) -> bool {
        self.reduce(a).is_zero()
    }

    /// Inverse of `a`, `Zero` when `a` vanishes, or a split of the modulus.
    pub fn inverse(&self, a: &UniPoly) -> SplitResult<Inverse> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Ok(Inverse::Zero);
        }
        let (g, s, _) = UniPoly::ext_gcd(&a, &self.modulus);
        if g.is_constant() {
            Ok(Inverse::Unit(self.reduce(&s)))
        } else {
            Err(Split(g))
        }
    }

    /// Decides whether `a` is zero or a unit; splits otherwise.
    pub fn is_zero_or_split(&self, a: &UniPoly) -> SplitResult<bool> {
        Ok(matches!(self.inverse(a)?, Inverse::Zero))
    }

    pub fn eval_multi(&self, p: &MultiPoly, point: &[UniPoly]) -> UniPoly {
        let mut acc = self.zero();
        let mut pows: Vec<Vec<UniPoly>> = point.iter().map(|x| vec![self.one(), self.reduce(x)]).collect();
        for (e, c) in p.terms() {
            let mut t = UniPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while pows[i].len() <= k {
                    let n = self.mul(pows[i].last().unwrap(), &point[i]);
                    pows[i].push(n);
                }
                if k > 0 {
                    t = self.mul(&t, &pows[i][k]);
                }
            }
            acc = &acc + &t;
        }
        self.reduce(&acc)
    }

    /// Row reduction over the ring; returns reduced rows and pivot columns.
    pub fn rref(&self, rows: &[Vec<UniPoly>]) -> SplitResult<(Vec<Vec<UniPoly>>, Vec<usize>)> {
        let mut m: Vec<Vec<UniPoly>> = rows.iter().map(|r| r.iter().map(|x| self.reduce(x)).collect()).collect();
        let nr = m.len();
        let nc = m.first().map_or(0, |r| r.len());
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let mut found = None;
            for i in r..nr {
                if let Inverse::Unit(inv) = self.inverse(&m[i][c])? {
                    found = Some((i, inv));
                    break;
                }
            }
            let Some((p, inv)) = found else { continue };
            m.swap(r, p);
            for j in c..nc {
                m[r][j] = self.mul(&m[r][j], &inv);
            }
            for i in 0..nr {
                if i == r || m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].clone();
                for j in c..nc {
                    let t = self.mul(&f, &m[r][j]);
                    m[i][j] = self.reduce(&(&m[i][j] - &t));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self, rows: &[Vec<UniPoly>]) -> SplitResult<usize> {
        Ok(self.rref(rows)?.1.len())
    }

    pub fn kernel_basis(&self, rows: &[Vec<UniPoly>], ncols: usize) -> SplitResult<Vec<Vec<UniPoly>>> {
        let (r, pivots) = self.rref(rows)?;
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![self.zero(); ncols];
                v[f] = self.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[k][f];
                }
                v
            })
            .collect())
    }

    /// Scales a nonzero vector so its first nonzero entry is 1.
    pub fn normalize_vector(&self, v: &[UniPoly]) -> SplitResult<Vec<UniPoly>> {
        for x in v {
            match self.inverse(x)? {
                Inverse::Zero => continue,
                Inverse::Unit(inv) => return Ok(v.iter().map(|y| self.mul(y, &inv)).collect()),
            }
        }
        Ok(v.iter().map(|y| self.reduce(y)).collect())
    }
}

/// Runs `f` over `K[t]/(h)`, splitting `h` on demand. Returns one result per
/// final factor of `h`; the factors multiply to `h` (made monic).
pub fn split_eval<T>(h: &UniPoly, mut f: impl FnMut(&ResidueRing) -> SplitResult<T>) -> Vec<(UniPoly, T)> {
    let mut stack = vec![h.monic()];
    let mut out = vec![];
    while let Some(m) = stack.pop() {
        let ring = ResidueRing::new(m.clone());
        match f(&ring) {
            Ok(t) => out.push((m, t)),
            Err(Split(g)) => {
                let g = g.monic();
                let other = m.exact_div(&g).expect("split factor divides the modulus").monic();
                assert!(!g.is_constant() && !other.is_constant(), "trivial split");
                stack.push(other);
                stack.push(g);
            }
        }
    }
    out.sort_by_key(|(m, _)| m.deg0());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_splits_on_zero_divisor() {
        let q = Field::Rational;
        // h = t(t-1); the matrix [[t]] has rank 0 at t=0 and 1 at t=1
        let h = UniPoly::from_i64(&[0, -1, 1], q);
        let res = split_eval(&h, |r| r.rank(&[vec![r.theta()]]));
        assert_eq!(res.len(), 2);
        let ranks: Vec<(usize, usize)> = res.iter().map(|(m, k)| (m.coeff(0).is_zero() as usize, *k)).collect();
        assert!(ranks.contains(&(1, 0)));
        assert!(ranks.contains(&(0, 1)));
    }

    #[test]
    fn inverse_in_number_field() {
        let q = Field::Rational;
        // Q(i): (1 + i)^{-1} = (1 - i)/2
        let r = ResidueRing::new(UniPoly::from_i64(&[1, 0, 1], q));
        let a = UniPoly::from_i64(&[1, 1], q);
        let Ok(Inverse::Unit(inv)) = r.inverse(&a) else { panic!() };
        assert!(r.mul(&a, &inv).rem(r.modulus()) == UniPoly::one(q));
    }
}
