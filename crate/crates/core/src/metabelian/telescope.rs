//! Telescopes `A = A_0 ⊆ A_1 ⊆ ...` with `A_k = A (s_0 ... s_(k-1))^-1`.

use num_traits::{One, Signed, Zero};

use super::{ModuleSpec, SplitMetabelianGroup};
use crate::error::{Error, Result};
use crate::lattice;
use crate::{Int, Matrix, Poly};

/// `num · (S_0 ... S_(den-1))^-1` inside `A ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFraction {
    pub num: Vec<Int>,
    pub den: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub k: usize,
    /// `det(S_0 ... S_(k-1))`, the index of `A` in `A_k`.
    pub index: Int,
    /// `A_k ⊊ A_(k+1)`; recorded for all but the last stage.
    pub proper: Option<bool>,
    /// `a -> a / P_k` commutes with `t`.
    pub iso_equivariant: bool,
    /// Inclusion after the isomorphism equals the isomorphism after `s_k`.
    pub square_commutes: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct TelescopeReport {
    pub s: Vec<Poly>,
    pub s_matrices: Vec<Matrix>,
    pub stages: Vec<StageReport>,
    pub strictly_ascending: bool,
    pub constant: bool,
}

impl TelescopeReport {
    /// `S_k ... S_(l-1)`.
    fn product(&self, k: usize, l: usize) -> Matrix {
        let d = self.s_matrices[0].nrows();
        (k..l).fold(Matrix::identity(d), |acc, i| acc.mul(&self.s_matrices[i]))
    }

    /// Equality by cross-multiplication: `x P_x^-1 = y P_y^-1`.
    pub fn equal(&self, x: &SFraction, y: &SFraction) -> bool {
        let (lo, hi) = if x.den <= y.den { (x, y) } else { (y, x) };
        self.product(lo.den, hi.den).apply_row(&lo.num) == hi.num
    }

    /// The inclusion `A_k -> A_(k+1)` on representatives.
    pub fn include(&self, x: &SFraction) -> SFraction {
        SFraction {
            num: self.s_matrices[x.den].apply_row(&x.num),
            den: x.den + 1,
        }
    }

    /// `A -> A_k`.
    pub fn iso(&self, a: &[Int], k: usize) -> SFraction {
        SFraction {
            num: a.to_vec(),
            den: k,
        }
    }
}

/// Stages `A_0..=A_n` for `s_k = s_gens[k mod len]`.
pub fn telescope_chain(
    g: &SplitMetabelianGroup,
    s_gens: &[Poly],
    n: usize,
) -> Result<TelescopeReport> {
    if s_gens.is_empty() {
        return Err(Error::InvalidInput("need at least one element of S".into()));
    }
    let z = match &g.module {
        ModuleSpec::CyclicModP(p) => {
            return Err(Error::Torsion(format!(
                "(Z/{p})[t,t^-1] is a torsion module"
            )))
        }
        _ => g.z_model().ok_or_else(|| {
            Error::Unsupported("telescopes need A finitely generated over Z".into())
        })?,
    };
    let d = z.dim();
    let aug_rows = lattice::hnf(&z.aug().to_rows(), d);
    let mut mats = Vec::new();
    for s in s_gens {
        let m = z.eval(s);
        let diff = m.sub(&Matrix::identity(d));
        if !diff
            .to_rows()
            .iter()
            .all(|r| lattice::contains(&aug_rows, r))
        {
            return Err(Error::InvalidInput(format!("{s} is not in 1 + (t - 1)A")));
        }
        if m.det().is_zero() {
            return Err(Error::Torsion(format!("{s} is a zero divisor on A")));
        }
        mats.push(m);
    }
    let s_matrices: Vec<Matrix> = (0..=n).map(|k| mats[k % mats.len()].clone()).collect();
    let s: Vec<Poly> = (0..=n).map(|k| s_gens[k % s_gens.len()].clone()).collect();
    let mut report = TelescopeReport {
        s,
        s_matrices,
        stages: Vec::new(),
        strictly_ascending: true,
        constant: true,
    };
    let e: Vec<Vec<Int>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    for k in 0..=n {
        let p = report.product(0, k);
        let iso_equivariant = p.mul(&z.m) == z.m.mul(&p);
        let (proper, square) = if k < n {
            let sk = &report.s_matrices[k];
            let index_one = sk.det().abs().is_one();
            let spans_all = lattice::same_lattice(&sk.to_rows(), &e, d);
            assert_eq!(index_one, spans_all, "determinant and row span disagree");
            let square = e.iter().all(|a| {
                let via_iso = report.include(&report.iso(a, k));
                let via_s = report.iso(&sk.apply_row(a), k + 1);
                report.equal(&via_iso, &via_s)
            });
            (Some(!spans_all), Some(square))
        } else {
            (None, None)
        };
        report.stages.push(StageReport {
            k,
            index: p.det().abs(),
            proper,
            iso_equivariant,
            square_commutes: square,
        });
    }
    report.strictly_ascending = report.stages.iter().all(|s| s.proper != Some(false));
    report.constant = report.stages.iter().all(|s| s.proper != Some(true));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metabelian::make_group;

    #[test]
    fn d10_chain() {
        let g = make_group("quad:10").unwrap();
        let r = telescope_chain(&g, &[Poly::from_i64(0, &[5, 2])], 3).unwrap();
        assert_eq!(r.stages.len(), 4);
        assert!(r.strictly_ascending);
        assert!(r
            .stages
            .iter()
            .all(|s| s.iso_equivariant && s.square_commutes != Some(false)));
        // 2t + 5 = 11 + 2√10 has norm 81
        assert_eq!(r.stages[1].index, Int::from(81));
        assert_eq!(r.stages[3].index, Int::from(81 * 81 * 81));
    }

    #[test]
    fn constant_chain() {
        let g = make_group("quad:10").unwrap();
        let r = telescope_chain(&g, &[Poly::one()], 3).unwrap();
        assert!(r.constant && !r.strictly_ascending);
        let u = make_group("unipotent2").unwrap();
        let r = telescope_chain(&u, &[Poly::t()], 2).unwrap();
        assert!(r.constant);
    }

    #[test]
    fn rejections() {
        let g = make_group("quad:10").unwrap();
        assert!(matches!(
            telescope_chain(&g, &[Poly::t_minus(Int::one())], 2),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            telescope_chain(&make_group("lamplighter").unwrap(), &[Poly::one()], 2),
            Err(Error::Torsion(_))
        ));
        assert!(matches!(
            telescope_chain(&make_group("wreath_zz").unwrap(), &[Poly::one()], 2),
            Err(Error::Unsupported(_))
        ));
    }
}
