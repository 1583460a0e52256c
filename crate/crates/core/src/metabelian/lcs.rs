//! Lower central quotients `γ_n / γ_(n+1)` of split metabelian groups and
//! the Hilbert series of their free ranks.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::inclusion::Presentation;
use super::{ModuleSpec, QSpec, SplitMetabelianGroup};
use crate::error::{Error, Result};
use crate::lattice;
use crate::laurent_poly::finite_quotient;
use crate::{GroupStructure, Int, Poly};

type Q = Ratio<Int>;

fn q_part(q: &QSpec) -> GroupStructure {
    match q {
        QSpec::InfiniteCyclic => GroupStructure::free(1),
        QSpec::FiniteCyclic(m) => GroupStructure::cyclic(Int::from(*m)),
        QSpec::CyclicTimesTorsion(m) => GroupStructure::new(1, vec![Int::from(*m)]),
    }
}

/// Structure of `A / A I^k` through the quotient ring `Z[t,t^-1]/(f, (t-1)^k)`.
fn ring_truncation(g: &SplitMetabelianGroup, k: usize) -> Result<GroupStructure> {
    let aug = Poly::t_minus(Int::one()).pow(k as u32);
    match &g.module {
        ModuleSpec::Cyclic(f) => finite_quotient(f, &aug),
        ModuleSpec::FreeRankOne => finite_quotient(&Poly::zero(), &aug),
        ModuleSpec::CyclicModP(p) => finite_quotient(&Poly::constant(p.clone()), &aug),
        ModuleSpec::Lattice(_) => {
            let z = g.z_model().expect("lattice shape has a Z model");
            Ok(lattice::cokernel(&z.aug().pow(k as u32).to_rows(), z.dim()))
        }
        ModuleSpec::Ideal(_) => Ok(Presentation::of_group(g)?.truncation(k)),
    }
}

/// Both computations of `A I^(n-1) / A I^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsRoutes {
    pub n: usize,
    /// Free rank and (when finite) order from `A/AI^n` over `A/AI^(n-1)`.
    pub quotient_rank: usize,
    pub quotient_order: Option<Int>,
    /// Structure read directly from the filtration.
    pub direct: GroupStructure,
}

impl LcsRoutes {
    pub fn agree(&self) -> bool {
        self.direct.free_rank == self.quotient_rank
            && (self.quotient_order.is_none() || self.direct.order() == self.quotient_order)
    }
}

/// `A I^(n-1) / A I^n` by the quotient-ring sizes and by a direct
/// filtration computation (the lattice chain `Im N^(n-1) / Im N^n` when `A`
/// is a lattice, exact truncation otherwise).
pub fn lcs_routes(g: &SplitMetabelianGroup, n: usize) -> Result<LcsRoutes> {
    if n == 0 {
        return Err(Error::InvalidInput("lcs index starts at 1".into()));
    }
    let lower = ring_truncation(g, n - 1)?;
    let upper = ring_truncation(g, n)?;
    let quotient_rank = upper.free_rank - lower.free_rank;
    let quotient_order = match (upper.order(), lower.order()) {
        (Some(u), Some(l)) => Some(u / l),
        _ => None,
    };
    let direct = match g.z_model() {
        Some(z) => {
            let nn = z.aug();
            lattice::quotient(
                &nn.pow((n - 1) as u32).to_rows(),
                &nn.pow(n as u32).to_rows(),
                z.dim(),
            )?
        }
        None => Presentation::of_group(g)?.filtration_quotient(n)?,
    };
    Ok(LcsRoutes {
        n,
        quotient_rank,
        quotient_order,
        direct,
    })
}

/// `γ_n(G) / γ_(n+1)(G)`: `Q x A/AI` for `n = 1`, `A I^(n-1) / A I^n` after.
pub fn lcs_quotient(g: &SplitMetabelianGroup, n: usize) -> Result<GroupStructure> {
    let r = lcs_routes(g, n)?;
    assert!(
        r.agree(),
        "lcs routes disagree for {} at n = {n}: {r:?}",
        g.label()
    );
    if n == 1 {
        Ok(q_part(&g.q_spec).product(&r.direct))
    } else {
        Ok(r.direct)
    }
}

/// Free ranks `r_1..r_depth` with a linear recurrence when one of order at
/// most [`MAX_RECURRENCE`] fits the trailing half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub ranks: Vec<usize>,
    /// `r_n = sum_i c_i r_(n-i)`, `c_1` first.
    pub recurrence: Option<Vec<Q>>,
    /// `sum r_n t^n = numerator / denominator`, coefficients by ascending power.
    pub numerator: Vec<Q>,
    pub denominator: Vec<Q>,
    /// Number of leading terms written out before the recurring tail.
    pub head: usize,
    tail_numerator: Vec<Q>,
}

pub const MAX_RECURRENCE: usize = 4;

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn render_poly(p: &[Q]) -> String {
    let mut s = String::new();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("({a})")
        };
        match (k, a.is_one()) {
            (0, _) => s.push_str(&coeff),
            (1, true) => s.push('t'),
            (1, false) => s.push_str(&format!("{coeff}t")),
            (_, true) => s.push_str(&format!("t^{k}")),
            (_, false) => s.push_str(&format!("{coeff}t^{k}")),
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl HilbertSeries {
    /// Leading terms plus the recurring tail, e.g. `2t + t^2/(1 - t)`.
    pub fn render(&self) -> String {
        if self.recurrence.is_none() {
            return format!(
                "{} + O(t^{})  (no recurrence found)",
                render_poly(&self.numerator),
                self.ranks.len() + 1
            );
        }
        let head: Vec<Q> = (0..=self.head)
            .map(|k| {
                if k == 0 {
                    Q::zero()
                } else {
                    Q::from_integer(self.ranks[k - 1].into())
                }
            })
            .collect();
        let mut parts = Vec::new();
        if head.iter().any(|c| !c.is_zero()) {
            parts.push(render_poly(&head));
        }
        if self.tail_numerator.iter().any(|c| !c.is_zero()) {
            let num = render_poly(&self.tail_numerator);
            let num = if self.tail_numerator.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({num})")
            } else {
                num
            };
            if self.denominator.len() == 1 {
                parts.push(num);
            } else {
                parts.push(format!("{num}/({})", render_poly(&self.denominator)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Solves the first `k` equations exactly and checks the rest.
fn fit_recurrence(r: &[Q], start: usize, k: usize) -> Option<Vec<Q>> {
    let eqs: Vec<usize> = (start + k..r.len()).collect();
    if eqs.len() < k + 1 {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    if k > 0 {
        // rows [r_(i-1) .. r_(i-k) | r_i]
        let mut a: Vec<Vec<Q>> = eqs[..k]
            .iter()
            .map(|&i| {
                let mut row: Vec<Q> = (1..=k).map(|j| r[i - j].clone()).collect();
                row.push(r[i].clone());
                row
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            for i in 0..k {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        c = a.into_iter().map(|row| row[k].clone()).collect();
    }
    let holds = |i: usize| {
        r[i] == (1..=k)
            .map(|j| &c[j - 1] * &r[i - j])
            .fold(Q::zero(), |s, x| s + x)
    };
    eqs.iter().all(|&i| holds(i)).then_some(c)
}

pub fn hilbert_coeffs(g: &SplitMetabelianGroup, depth: usize) -> Result<HilbertSeries> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be positive".into()));
    }
    let ranks: Vec<usize> = (1..=depth)
        .map(|n| lcs_quotient(g, n).map(|s| s.free_rank))
        .collect::<Result<_>>()?;
    let r: Vec<Q> = ranks.iter().map(|&x| Q::from_integer(x.into())).collect();
    let start = depth / 2;
    let found = (0..=MAX_RECURRENCE).find_map(|k| fit_recurrence(&r, start, k).map(|c| (k, c)));
    let series: Vec<Q> = std::iter::once(Q::zero())
        .chain(r.iter().cloned())
        .collect();
    let Some((k, c)) = found else {
        return Ok(HilbertSeries {
            ranks,
            recurrence: None,
            numerator: trim(series),
            denominator: vec![Q::one()],
            head: depth,
            tail_numerator: vec![Q::zero()],
        });
    };
    let holds = |i: usize| {
        r[i] == (1..=k)
            .map(|j| &c[j - 1] * &r[i - j])
            .fold(Q::zero(), |s, x| s + x)
    };
    // earliest index from which the tail satisfies the recurrence internally
    let mut i0 = start;
    while i0 > 0 && holds(i0 - 1 + k) {
        i0 -= 1;
    }
    let denominator: Vec<Q> = std::iter::once(Q::one())
        .chain(c.iter().map(|x| -x))
        .collect();
    // tail T = sum_(i >= i0) r_i t^(i+1); D*T is a polynomial of degree <= i0 + k
    let tail: Vec<Q> = (0..=i0 + k)
        .map(|e| {
            if e > i0 && e <= depth {
                r[e - 1].clone()
            } else {
                Q::zero()
            }
        })
        .collect();
    let mut tail_numerator = poly_mul(&denominator, &tail);
    tail_numerator.truncate(i0 + k + 1);
    let head_poly: Vec<Q> = series[..=i0].to_vec();
    let mut numerator = poly_mul(&denominator, &head_poly);
    if numerator.len() < tail_numerator.len() {
        numerator.resize(tail_numerator.len(), Q::zero());
    }
    for (x, y) in numerator.iter_mut().zip(&tail_numerator) {
        *x = &*x + y;
    }
    Ok(HilbertSeries {
        ranks,
        recurrence: Some(c),
        numerator: trim(numerator),
        denominator,
        head: i0,
        tail_numerator: trim(tail_numerator),
    })
}
