//! Split metabelian groups `G = Q ⋉ A` with `Q` cyclic (possibly times a
//! finite cyclic group) and `A` a finitely generated `Z[Q]`-module.

mod embedding;
mod inclusion;
mod laurent_ideal;
mod lcs;
mod properties;
mod telescope;
pub mod words;

pub use embedding::{
    embedding_demo, DerivationStep, EmbeddingReport, Justification, LocalizedElement,
};
pub use inclusion::{
    para_inclusion_check, para_witness, submodule_group, InclusionReport, LevelCertificate,
    Presentation, Submodule, WitnessReport, DEFAULT_DEPTH,
};
pub use laurent_ideal::{laurent_ideal_principal, LaurentIdealVerdict};
pub use lcs::{hilbert_coeffs, lcs_quotient, lcs_routes, HilbertSeries, LcsRoutes};
pub use properties::{is_finitely_presentable, is_residually_nilpotent, Verdict};
pub use telescope::{telescope_chain, SFraction, StageReport, TelescopeReport};

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent_poly::{companion, cyclotomic_poly};
use crate::quad_order::{fundamental_unit, MonogenicRing};
use crate::scalar::{is_prime, is_squarefree};
use crate::{Int, Matrix, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSpec {
    InfiniteCyclic,
    FiniteCyclic(u64),
    /// `Z x Z/m`, the torsion factor acting trivially.
    CyclicTimesTorsion(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `Z[t, t^-1]/(f)`.
    Cyclic(Poly),
    /// `Z[t, t^-1]`.
    FreeRankOne,
    /// `(Z/p)[t, t^-1]`.
    CyclicModP(Int),
    /// `Z^n` with `t` acting on row vectors by an invertible matrix.
    Lattice(Matrix),
    /// The ideal of `Z[t, t^-1]` generated by the given polynomials, so that
    /// groups `T ⋉ J` for submodules of the wreath module can be formed.
    Ideal(Vec<Poly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMetabelianGroup {
    pub q_spec: QSpec,
    pub module: ModuleSpec,
    pub name: Option<String>,
}

/// `A` as `Z^d` with `t` acting by `m` on row vectors.
#[derive(Clone, Debug)]
pub(crate) struct ZModel {
    pub m: Matrix,
    pub m_inv: Matrix,
}

impl ZModel {
    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// `N = M - 1`, the action of the augmentation generator.
    pub fn aug(&self) -> Matrix {
        self.m.sub(&Matrix::identity(self.dim()))
    }

    pub fn eval(&self, p: &Poly) -> Matrix {
        p.eval_matrix(&self.m, Some(&self.m_inv))
            .expect("invertible action")
    }
}

impl SplitMetabelianGroup {
    pub fn new(q_spec: QSpec, module: ModuleSpec, name: Option<String>) -> Result<Self> {
        match &module {
            ModuleSpec::Cyclic(f) if f.is_zero() => {
                return Err(Error::InvalidInput("cyclic module needs f != 0".into()));
            }
            ModuleSpec::CyclicModP(p) if !is_prime(p) => {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            ModuleSpec::Lattice(m) if m.nrows() != m.ncols() || !m.det().abs().is_one() => {
                return Err(Error::InvalidInput(
                    "lattice action must be invertible over Z".into(),
                ));
            }
            ModuleSpec::Ideal(g) if g.iter().all(|p| p.is_zero()) => return Err(Error::ZeroIdeal),
            _ => {}
        }
        if matches!(
            q_spec,
            QSpec::FiniteCyclic(0) | QSpec::CyclicTimesTorsion(0)
        ) {
            return Err(Error::InvalidInput("torsion order must be positive".into()));
        }
        Ok(SplitMetabelianGroup {
            q_spec,
            module,
            name,
        })
    }

    /// `Z ⋉ Z[t, t^-1]/(f)`.
    pub fn cyclic(f: Poly, name: Option<String>) -> Result<Self> {
        Self::new(QSpec::InfiniteCyclic, ModuleSpec::Cyclic(f), name)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_string())
    }

    /// The `Z^d` model, when `A` is finitely generated free abelian with an
    /// invertible action.
    pub(crate) fn z_model(&self) -> Option<ZModel> {
        match &self.module {
            ModuleSpec::Cyclic(f) if f.is_bimonic() && f.span() >= 1 => {
                let m = companion(&f.normalized_shift());
                let m_inv = m
                    .inverse_unimodular()
                    .expect("bimonic companion is unimodular");
                Some(ZModel { m, m_inv })
            }
            ModuleSpec::Lattice(m) => Some(ZModel {
                m: m.clone(),
                m_inv: m.inverse_unimodular()?,
            }),
            _ => None,
        }
    }

    /// The coordinate ring `Z[Q]/Ann(A)` for the supported shapes.
    pub fn coordinate_ring(&self) -> String {
        match &self.module {
            ModuleSpec::Cyclic(f) => format!("Z[t,t^-1]/({f})"),
            ModuleSpec::FreeRankOne | ModuleSpec::Ideal(_) => "Z[t,t^-1]".into(),
            ModuleSpec::CyclicModP(p) => format!("(Z/{p})[t,t^-1]"),
            ModuleSpec::Lattice(m) => format!("Z[t,t^-1]/({})", lattice_min_poly(m)),
        }
    }
}

/// Minimal polynomial of an integer matrix, by the first linear dependency
/// among its powers.
pub(crate) fn lattice_min_poly(m: &Matrix) -> Poly {
    let n = m.nrows();
    let mut powers: Vec<Vec<Int>> = Vec::new();
    let mut p = Matrix::identity(n);
    for k in 0..=n {
        let flat: Vec<Int> = p.to_rows().concat();
        let mut trial = powers.clone();
        trial.push(flat.clone());
        let ker = crate::lattice::left_kernel(&trial, n * n);
        if let Some(rel) = ker.into_iter().find(|r| !r[k].is_zero()) {
            let lead = rel[k].clone();
            let coeffs = if lead.is_negative() {
                rel.iter().map(|c| -c).collect()
            } else {
                rel
            };
            let g = coeffs
                .iter()
                .fold(Int::zero(), |a, c| num_integer::Integer::gcd(&a, c));
            return Poly::new(0, coeffs.into_iter().map(|c| c / g.clone()).collect());
        }
        powers.push(flat);
        p = p.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree")
}

impl fmt::Display for SplitMetabelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match &self.q_spec {
            QSpec::InfiniteCyclic => "Z".to_string(),
            QSpec::FiniteCyclic(m) => format!("Z/{m}"),
            QSpec::CyclicTimesTorsion(m) => format!("Z x Z/{m}"),
        };
        let a = match &self.module {
            ModuleSpec::Cyclic(p) => format!("Z[t,t^-1]/({p})"),
            ModuleSpec::FreeRankOne => "Z[t,t^-1]".into(),
            ModuleSpec::CyclicModP(p) => format!("(Z/{p})[t,t^-1]"),
            ModuleSpec::Lattice(m) => format!("Z^{} with t = {m}", m.nrows()),
            ModuleSpec::Ideal(g) => {
                let gs: Vec<String> = g.iter().map(|p| p.to_string()).collect();
                format!("({}) in Z[t,t^-1]", gs.join(", "))
            }
        };
        write!(f, "{q} ⋉ {a}")
    }
}

fn parse_int(s: &str, preset: &str) -> Result<Int> {
    s.parse::<Int>()
        .map_err(|_| Error::UnknownPreset(preset.to_string()))
}

/// Minimal polynomial `t^2 - Tr(ε) t + N(ε)` of the fundamental unit of `Q(√d)`.
pub fn quad_unit_poly(d: &Int) -> Result<Poly> {
    if !is_squarefree(d) || d <= &Int::one() {
        return Err(Error::InvalidInput(format!(
            "quad:{d} needs a squarefree d >= 2"
        )));
    }
    let ring = MonogenicRing::maximal_order(d)?;
    Ok(ring.min_poly(&fundamental_unit(d)?))
}

/// Named groups: `lamplighter`, `wreath_zz`, `bs12`, `z_inv_n:<n>`,
/// `quad:<d>`, `cyclo:<n>`, `unipotent2` (alias `heisenberg_like`) and `zc2`.
pub fn make_group(preset: &str) -> Result<SplitMetabelianGroup> {
    let name = Some(preset.to_string());
    let (head, arg) = match preset.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (preset, None),
    };
    let t_minus = |n: Int| Poly::t_minus(n);
    match (head, arg) {
        ("lamplighter", None) => SplitMetabelianGroup::new(
            QSpec::InfiniteCyclic,
            ModuleSpec::CyclicModP(Int::from(2)),
            name,
        ),
        ("wreath_zz", None) => {
            SplitMetabelianGroup::new(QSpec::InfiniteCyclic, ModuleSpec::FreeRankOne, name)
        }
        ("bs12", None) => SplitMetabelianGroup::cyclic(t_minus(Int::from(2)), name),
        ("z_inv_n", Some(n)) => {
            let n = parse_int(n, preset)?;
            if n < Int::from(2) {
                return Err(Error::InvalidInput(format!(
                    "z_inv_n needs n >= 2, got {n}"
                )));
            }
            SplitMetabelianGroup::cyclic(t_minus(n), name)
        }
        ("quad", Some(d)) => {
            SplitMetabelianGroup::cyclic(quad_unit_poly(&parse_int(d, preset)?)?, name)
        }
        ("cyclo", Some(n)) => {
            let n: u64 = n
                .parse()
                .map_err(|_| Error::UnknownPreset(preset.to_string()))?;
            if n < 2 {
                return Err(Error::InvalidInput("cyclo needs n >= 2".into()));
            }
            SplitMetabelianGroup::cyclic(cyclotomic_poly(n)?, name)
        }
        ("unipotent2" | "heisenberg_like", None) => SplitMetabelianGroup::new(
            QSpec::InfiniteCyclic,
            ModuleSpec::Lattice(Matrix::from_i64(&[&[1, 1], &[0, 1]])),
            name,
        ),
        ("zc2", None) => SplitMetabelianGroup::new(
            QSpec::FiniteCyclic(2),
            ModuleSpec::Cyclic(Poly::from_i64(0, &[-1, 0, 1])),
            name,
        ),
        _ => Err(Error::UnknownPreset(preset.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(
            make_group("quad:10").unwrap().module,
            ModuleSpec::Cyclic(Poly::from_i64(0, &[-1, -6, 1]))
        );
        assert_eq!(
            make_group("bs12").unwrap().module,
            ModuleSpec::Cyclic(Poly::from_i64(0, &[-2, 1]))
        );
        assert_eq!(
            make_group("wreath_zz").unwrap().module,
            ModuleSpec::FreeRankOne
        );
        assert_eq!(
            make_group("z_inv_n:3").unwrap().module,
            ModuleSpec::Cyclic(Poly::from_i64(0, &[-3, 1]))
        );
        assert_eq!(
            make_group("quad:82").unwrap().module,
            ModuleSpec::Cyclic(Poly::from_i64(0, &[-1, -18, 1]))
        );
        assert!(matches!(make_group("quad:4"), Err(Error::InvalidInput(_))));
        assert!(matches!(make_group("nope"), Err(Error::UnknownPreset(_))));
        assert!(matches!(
            make_group("cyclo:x"),
            Err(Error::UnknownPreset(_))
        ));
        assert_eq!(
            make_group("heisenberg_like").unwrap().module,
            make_group("unipotent2").unwrap().module
        );
    }

    #[test]
    fn coordinate_rings() {
        assert_eq!(
            make_group("unipotent2").unwrap().coordinate_ring(),
            "Z[t,t^-1]/(t^2 - 2*t + 1)"
        );
        assert_eq!(
            make_group("lamplighter").unwrap().coordinate_ring(),
            "(Z/2)[t,t^-1]"
        );
    }
}
