//! Finitely presented modules over `Z[t, t^-1]`, their truncations
//! `M / M I^k`, and the level-by-level check that an inclusion of modules
//! induces isomorphisms on all lower-central quotients.

use num_traits::{One, Signed, Zero};

use super::{ModuleSpec, QSpec, SplitMetabelianGroup, ZModel};
use crate::error::{Error, Result};
use crate::lattice;
use crate::laurent_poly::{companion, gcd_mod_p, poly_gcd};
use crate::scalar::ext_gcd;
use crate::{GroupStructure, Int, Matrix, Poly};

/// `Z[t,t^-1]^ngens / (relations)`, each relation a vector over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ngens: usize,
    pub relations: Vec<Vec<Poly>>,
}

/// `Z[t,t^-1]/(t-1)^k = Z^k` with `t` acting by a unimodular companion matrix.
struct Truncation {
    k: usize,
    c: Matrix,
    c_inv: Matrix,
}

impl Truncation {
    fn new(k: usize) -> Self {
        let c = companion(&Poly::t_minus(Int::one()).pow(k as u32));
        let c_inv = c.inverse_unimodular().expect("(t-1)^k is bimonic");
        Truncation { k, c, c_inv }
    }

    /// Coordinates of `p mod (t-1)^k` in the basis `1, t, ..., t^(k-1)`.
    fn coords(&self, p: &Poly) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.k];
        if p.is_zero() {
            return out;
        }
        let mut w: Vec<Int> = (0..self.k)
            .map(|i| if i == 0 { Int::one() } else { Int::zero() })
            .collect();
        let step = if p.min_deg() < 0 {
            &self.c_inv
        } else {
            &self.c
        };
        for _ in 0..p.min_deg().unsigned_abs() {
            w = step.apply_row(&w);
        }
        for c in p.coeffs() {
            for (o, x) in out.iter_mut().zip(&w) {
                *o += c * x;
            }
            w = self.c.apply_row(&w);
        }
        out
    }

    fn element(&self, v: &[Poly]) -> Vec<Int> {
        v.iter().flat_map(|p| self.coords(p)).collect()
    }
}

impl Presentation {
    pub fn of_group(g: &SplitMetabelianGroup) -> Result<Self> {
        Ok(match &g.module {
            ModuleSpec::Cyclic(f) => Presentation {
                ngens: 1,
                relations: vec![vec![f.clone()]],
            },
            ModuleSpec::FreeRankOne => Presentation {
                ngens: 1,
                relations: Vec::new(),
            },
            ModuleSpec::CyclicModP(p) => Presentation {
                ngens: 1,
                relations: vec![vec![Poly::constant(p.clone())]],
            },
            ModuleSpec::Lattice(m) => Self::of_lattice(m),
            ModuleSpec::Ideal(gens) => Self::of_ideal(gens)?,
        })
    }

    /// Relations `t e_i = sum_j m_ij e_j`.
    pub fn of_lattice(m: &Matrix) -> Self {
        let n = m.nrows();
        let relations = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t = if i == j { Poly::t() } else { Poly::zero() };
                        &t - &Poly::constant(m[(i, j)].clone())
                    })
                    .collect()
            })
            .collect();
        Presentation {
            ngens: n,
            relations,
        }
    }

    /// An ideal of `Z[t,t^-1]` on at most two generators; the syzygies of
    /// `(g1, g2)` are generated by `(g2/h, -g1/h)` with `h = gcd(g1, g2)`.
    pub fn of_ideal(gens: &[Poly]) -> Result<Self> {
        let gens: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
        match gens.as_slice() {
            [] => Err(Error::ZeroIdeal),
            [_] => Ok(Presentation {
                ngens: 1,
                relations: Vec::new(),
            }),
            [g1, g2] => {
                let h = poly_gcd(g1, g2);
                let a = g2.div_exact(&h).expect("gcd divides");
                let b = g1.div_exact(&h).expect("gcd divides");
                Ok(Presentation {
                    ngens: 2,
                    relations: vec![vec![a, -b]],
                })
            }
            _ => Err(Error::Unsupported(
                "ideals on more than two generators".into(),
            )),
        }
    }

    fn truncated_relations(&self, tr: &Truncation) -> Vec<Vec<Int>> {
        let mut rows = Vec::new();
        for r in &self.relations {
            for j in 0..tr.k {
                let shifted: Vec<Poly> = r.iter().map(|p| p.shift(j as i64)).collect();
                rows.push(tr.element(&shifted));
            }
        }
        rows
    }

    /// Structure of `M / M I^k`.
    pub fn truncation(&self, k: usize) -> GroupStructure {
        if k == 0 {
            return GroupStructure::trivial();
        }
        let tr = Truncation::new(k);
        lattice::cokernel(&self.truncated_relations(&tr), self.ngens * k)
    }

    /// Structure of `M I^(n-1) / M I^n`, read off inside `M / M I^n`.
    pub fn filtration_quotient(&self, n: usize) -> Result<GroupStructure> {
        assert!(n >= 1);
        let tr = Truncation::new(n);
        let rel = self.truncated_relations(&tr);
        let mut big = rel.clone();
        let aug = Poly::t_minus(Int::one()).pow((n - 1) as u32);
        for i in 0..self.ngens {
            for j in 0..n {
                let mut v = vec![Poly::zero(); self.ngens];
                v[i] = aug.shift(j as i64);
                big.push(tr.element(&v));
            }
        }
        lattice::quotient(&big, &rel, self.ngens * n)
    }
}

/// Bijectivity of one truncation level of a module map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCertificate {
    pub level: usize,
    pub source: GroupStructure,
    pub target: GroupStructure,
    pub injective: bool,
    pub surjective: bool,
}

impl LevelCertificate {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    pub levels: Vec<LevelCertificate>,
    pub pass: bool,
}

impl InclusionReport {
    fn from_levels(levels: Vec<LevelCertificate>) -> Self {
        let pass = levels.iter().all(|l| l.bijective());
        InclusionReport { levels, pass }
    }

    /// First failing level, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.bijective()).map(|l| l.level)
    }
}

/// The map `src -> dst` sending generator `i` to `images[i]`, on every
/// truncation level `1..=depth`.
fn hom_levels(
    src: &Presentation,
    dst: &Presentation,
    images: &[Vec<Poly>],
    depth: usize,
) -> Result<Vec<LevelCertificate>> {
    let mut out = Vec::new();
    for k in 1..=depth {
        let tr = Truncation::new(k);
        let rel_src = src.truncated_relations(&tr);
        let rel_dst = dst.truncated_relations(&tr);
        let dst_dim = dst.ngens * k;
        let rel_basis = lattice::hnf(&rel_dst, dst_dim);
        // well defined: relations of the source map into relations of the target
        for r in &src.relations {
            let mut img = vec![Poly::zero(); dst.ngens];
            for (ri, im) in r.iter().zip(images) {
                for (slot, x) in img.iter_mut().zip(im) {
                    *slot = &*slot + &(ri * x);
                }
            }
            if !lattice::contains(&rel_basis, &tr.element(&img)) {
                return Err(Error::InvalidInput("module map is not well defined".into()));
            }
        }
        let mut map = Vec::new();
        for im in images {
            for j in 0..k {
                let shifted: Vec<Poly> = im.iter().map(|p| p.shift(j as i64)).collect();
                map.push(tr.element(&shifted));
            }
        }
        let (injective, surjective) =
            lattice::induced_map_bijectivity(&map, &rel_src, &rel_dst, src.ngens * k, dst_dim);
        out.push(LevelCertificate {
            level: k,
            source: lattice::cokernel(&rel_src, src.ngens * k),
            target: lattice::cokernel(&rel_dst, dst_dim),
            injective,
            surjective,
        });
    }
    Ok(out)
}

/// A submodule of a cyclic or free module `A`, given by generators written
/// as Laurent polynomials in the generator of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub gens: Vec<Poly>,
}

impl Submodule {
    pub fn new(gens: Vec<Poly>) -> Self {
        Submodule { gens }
    }
}

/// `J` with its own presentation and the inclusion into `A`.
pub(crate) struct SubmoduleModel {
    pub presentation: Presentation,
    /// Image in `A` of each generator of `presentation`.
    pub images: Vec<Vec<Poly>>,
    /// `t`-action on a `Z`-basis of `J`, when `A` has a `Z^d` model.
    pub action: Option<Matrix>,
    /// Basis (or generating set) of `J` as elements of `A`, with their
    /// expression over the generators of `presentation`.
    pub spanning: Vec<(Poly, Vec<Poly>)>,
    /// `1` over the generators of `presentation`, when visibly in `J`.
    pub one: Option<Vec<Poly>>,
}

fn poly_of_coords(v: &[Int]) -> Poly {
    Poly::new(0, v.to_vec())
}

/// Coordinates in `Z^d` of `p` acting on the generator.
pub(crate) fn z_coords(z: &ZModel, p: &Poly) -> Vec<Int> {
    let e0: Vec<Int> = (0..z.dim())
        .map(|i| if i == 0 { Int::one() } else { Int::zero() })
        .collect();
    z.eval(p).apply_row(&e0)
}

pub(crate) fn model_submodule(g: &SplitMetabelianGroup, j: &Submodule) -> Result<SubmoduleModel> {
    if j.gens.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroIdeal);
    }
    match &g.module {
        ModuleSpec::Cyclic(_) => {
            let z = g.z_model().ok_or_else(|| {
                Error::Unsupported(
                    "submodules of cyclic modules with non-unit end coefficients".into(),
                )
            })?;
            let d = z.dim();
            let mut rows = Vec::new();
            for p in &j.gens {
                let mut v = z_coords(&z, p);
                for _ in 0..d {
                    rows.push(v.clone());
                    v = z.m.apply_row(&v);
                }
            }
            let basis = lattice::hnf(&rows, d);
            let r = basis.len();
            let action_rows: Vec<Vec<Int>> = basis
                .iter()
                .map(|b| {
                    lattice::solve_in_basis(&basis, &z.m.apply_row(b))
                        .expect("submodule is t-stable")
                })
                .collect();
            let action = Matrix::from_rows(action_rows, r);
            let images: Vec<Vec<Poly>> = basis.iter().map(|b| vec![poly_of_coords(b)]).collect();
            let spanning = basis
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let e: Vec<Poly> = (0..r)
                        .map(|k| if k == i { Poly::one() } else { Poly::zero() })
                        .collect();
                    (poly_of_coords(b), e)
                })
                .collect();
            let e0: Vec<Int> = (0..d)
                .map(|i| if i == 0 { Int::one() } else { Int::zero() })
                .collect();
            let one = lattice::solve_in_basis(&basis, &e0)
                .map(|c| c.into_iter().map(Poly::constant).collect());
            Ok(SubmoduleModel {
                presentation: Presentation::of_lattice(&action),
                images,
                action: Some(action),
                spanning,
                one,
            })
        }
        ModuleSpec::FreeRankOne => {
            let gens: Vec<Poly> = j.gens.iter().filter(|p| !p.is_zero()).cloned().collect();
            let presentation = Presentation::of_ideal(&gens)?;
            let n = gens.len();
            let images = gens.iter().map(|p| vec![p.clone()]).collect();
            let spanning = gens
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let e: Vec<Poly> = (0..n)
                        .map(|k| if k == i { Poly::one() } else { Poly::zero() })
                        .collect();
                    (p.clone(), e)
                })
                .collect();
            let one = gens
                .iter()
                .position(|p| p.span() == 0 && p.coeffs()[0].abs().is_one())
                .map(|i| {
                    let inv = Poly::monomial(gens[i].coeffs()[0].clone(), -gens[i].min_deg());
                    (0..n)
                        .map(|k| if k == i { inv.clone() } else { Poly::zero() })
                        .collect()
                });
            Ok(SubmoduleModel {
                presentation,
                images,
                action: None,
                spanning,
                one,
            })
        }
        ModuleSpec::CyclicModP(p) => {
            let h = j
                .gens
                .iter()
                .fold(Poly::zero(), |acc, g| gcd_mod_p(&acc, g, p));
            if h.is_zero() {
                return Err(Error::ZeroIdeal);
            }
            Ok(SubmoduleModel {
                presentation: Presentation {
                    ngens: 1,
                    relations: vec![vec![Poly::constant(p.clone())]],
                },
                images: vec![vec![h.clone()]],
                action: None,
                one: (h == Poly::one()).then(|| vec![Poly::one()]),
                spanning: vec![(h, vec![Poly::one()])],
            })
        }
        _ => Err(Error::Unsupported(
            "submodules are given inside cyclic or free modules".into(),
        )),
    }
}

/// The group `Q ⋉ J` for a submodule `J` of `A`.
pub fn submodule_group(g: &SplitMetabelianGroup, j: &Submodule) -> Result<SplitMetabelianGroup> {
    let model = model_submodule(g, j)?;
    let module = match (&g.module, model.action) {
        (_, Some(action)) => ModuleSpec::Lattice(action),
        (ModuleSpec::FreeRankOne, None) => ModuleSpec::Ideal(j.gens.clone()),
        (ModuleSpec::CyclicModP(p), None) => ModuleSpec::CyclicModP(p.clone()),
        _ => unreachable!("model_submodule covers the supported shapes"),
    };
    SplitMetabelianGroup::new(g.q_spec.clone(), module, None)
}

/// Whether `J ⊆ A` induces isomorphisms `J / J I^k -> A / A I^k` for
/// `k = 1..=depth`; level 1 together with the identity on `Q` is the
/// abelianization.
pub fn para_inclusion_check(
    j: &Submodule,
    g: &SplitMetabelianGroup,
    depth: usize,
) -> Result<InclusionReport> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be positive".into()));
    }
    let model = model_submodule(g, j)?;
    let ambient = Presentation::of_group(g)?;
    Ok(InclusionReport::from_levels(hom_levels(
        &model.presentation,
        &ambient,
        &model.images,
        depth,
    )?))
}

/// `s ∈ J` with `s ≡ 1` modulo the augmentation, so that `s A ⊆ J ⊆ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub s: Poly,
    /// `J -> A`.
    pub forward: InclusionReport,
    /// `A -> J`, multiplication by `s`.
    pub backward: InclusionReport,
}

/// Order of `A / A I` as an integer, zero when infinite.
pub(crate) fn aug_modulus(g: &SplitMetabelianGroup) -> Result<Int> {
    match &g.module {
        ModuleSpec::Cyclic(f) => Ok(f.eval_at_one().abs()),
        ModuleSpec::FreeRankOne => Ok(Int::zero()),
        ModuleSpec::CyclicModP(p) => Ok(p.clone()),
        _ => Err(Error::Unsupported(
            "augmentation quotient of this module shape".into(),
        )),
    }
}

pub const DEFAULT_DEPTH: usize = 6;

pub fn para_witness(j: &Submodule, g: &SplitMetabelianGroup) -> Result<WitnessReport> {
    if !matches!(g.q_spec, QSpec::InfiniteCyclic) {
        return Err(Error::Unsupported(
            "witnesses are computed for Q infinite cyclic".into(),
        ));
    }
    let model = model_submodule(g, j)?;
    let ambient = Presentation::of_group(g)?;
    if let Some(one) = &model.one {
        let forward = InclusionReport::from_levels(hom_levels(
            &model.presentation,
            &ambient,
            &model.images,
            DEFAULT_DEPTH,
        )?);
        let backward = InclusionReport::from_levels(hom_levels(
            &ambient,
            &model.presentation,
            std::slice::from_ref(one),
            DEFAULT_DEPTH,
        )?);
        return Ok(WitnessReport {
            s: Poly::one(),
            forward,
            backward,
        });
    }
    let m = aug_modulus(g)?;
    // sum c_i eps(b_i) = gcd, then fold in the modulus
    let mut acc = Int::zero();
    let mut coeffs = vec![Int::zero(); model.spanning.len()];
    for (i, (b, _)) in model.spanning.iter().enumerate() {
        let (g2, x, y) = ext_gcd(&acc, &b.eval_at_one());
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs[i] += y;
        acc = g2;
    }
    let (g2, x, _) = ext_gcd(&acc, &m);
    if !g2.is_one() {
        return Err(Error::NotSFractional);
    }
    for c in coeffs.iter_mut() {
        *c *= &x;
    }
    let ngens = model.presentation.ngens;
    let mut s = Poly::zero();
    let mut s_in_j = vec![Poly::zero(); ngens];
    for (c, (b, e)) in coeffs.iter().zip(&model.spanning) {
        s = &s + &b.scale(c);
        for (slot, x) in s_in_j.iter_mut().zip(e) {
            *slot = &*slot + &x.scale(c);
        }
    }
    if let ModuleSpec::CyclicModP(p) = &g.module {
        s = crate::laurent_poly::reduce_mod(&s, p);
    }
    let forward = InclusionReport::from_levels(hom_levels(
        &model.presentation,
        &ambient,
        &model.images,
        DEFAULT_DEPTH,
    )?);
    let backward = InclusionReport::from_levels(hom_levels(
        &ambient,
        &model.presentation,
        &[s_in_j],
        DEFAULT_DEPTH,
    )?);
    Ok(WitnessReport {
        s,
        forward,
        backward,
    })
}
