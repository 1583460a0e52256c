use std::collections::BTreeMap;

use paraclass_core::class_group::compute_class_group;
use paraclass_core::metabelian::{
    is_finitely_presentable, is_residually_nilpotent, make_group, ModuleSpec, QSpec,
    SplitMetabelianGroup, Verdict,
};
use paraclass_core::para_class::{classify_para, s_class_group, Provenance};
use paraclass_core::quad_order::is_laurent_domain;
use paraclass_core::scalar::is_squarefree;
use paraclass_core::{GroupStructure, Int, Matrix, Ring};
use serde_json::{json, Value};

use crate::{json, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub value: bool,
    pub certificate: String,
}

impl From<Verdict> for Flag {
    fn from(v: Verdict) -> Self {
        Flag {
            value: v.value,
            certificate: v.reason,
        }
    }
}

/// An S-fractional ideal with the matrices realizing `T ⋉ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub hnf: Vec<Int>,
    pub action: Matrix,
    pub inclusion: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub subject: String,
    pub laurent: Option<Flag>,
    pub residually_nilpotent: Option<Flag>,
    pub finitely_presentable: Option<Flag>,
    pub class_group: Option<GroupStructure>,
    pub s_class_group: Option<GroupStructure>,
    pub para_class_count: Option<u64>,
    pub representatives: Vec<Representative>,
    pub provenance: BTreeMap<String, Provenance>,
}

fn provenance_str(p: Provenance) -> &'static str {
    match p {
        Provenance::Computed => "computed",
        Provenance::PaperSourced => "paper_sourced",
    }
}

impl ClassificationReport {
    fn new(subject: String) -> Self {
        ClassificationReport {
            subject,
            laurent: None,
            residually_nilpotent: None,
            finitely_presentable: None,
            class_group: None,
            s_class_group: None,
            para_class_count: None,
            representatives: Vec::new(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let flag = |f: &Option<Flag>| match f {
            Some(f) => json!({"value": f.value, "certificate": f.certificate}),
            None => Value::Null,
        };
        let group = |g: &Option<GroupStructure>| g.as_ref().map_or(Value::Null, json::group);
        json!({
            "subject": self.subject,
            "flags": {
                "laurent": flag(&self.laurent),
                "residually_nilpotent": flag(&self.residually_nilpotent),
                "finitely_presentable": flag(&self.finitely_presentable),
            },
            "class_group": group(&self.class_group),
            "s_class_group": group(&self.s_class_group),
            "para_class_count": self.para_class_count,
            "representatives": self.representatives.iter().map(|r| json!({
                "hnf": json::ints(&r.hnf),
                "action": json::matrix(&r.action),
                "inclusion": json::matrix(&r.inclusion),
            })).collect::<Vec<_>>(),
            "provenance": self.provenance.iter().map(|(k, p)| (k.clone(), json!(provenance_str(*p)))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// A report together with the reasons behind any missing field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subject {
    pub report: ClassificationReport,
    pub notes: Vec<String>,
}

impl Subject {
    pub fn to_json(&self) -> Value {
        json!({"report": self.report.to_json(), "notes": self.notes})
    }
}

fn classification(g: &SplitMetabelianGroup) -> Subject {
    let mut r = ClassificationReport::new(g.label());
    let mut notes = Vec::new();
    match is_residually_nilpotent(g) {
        Ok(v) => {
            r.residually_nilpotent = Some(v.into());
            r.provenance
                .insert("residually_nilpotent".into(), Provenance::Computed);
        }
        Err(e) => notes.push(format!("residually_nilpotent: {e}")),
    }
    match is_finitely_presentable(g) {
        Ok(v) => {
            r.finitely_presentable = Some(v.into());
            r.provenance
                .insert("finitely_presentable".into(), Provenance::Computed);
        }
        Err(e) => notes.push(format!("finitely_presentable: {e}")),
    }
    if let (QSpec::InfiniteCyclic, ModuleSpec::Cyclic(f)) = (&g.q_spec, &g.module) {
        if f.span() == 2 && f.is_bimonic() {
            if let Ok(ring) = Ring::make_ring(f) {
                let dedekind = ring.is_domain() && ring.is_maximal();
                let certificate = if dedekind {
                    format!(
                        "Z[t,t^-1]/({f}) is the maximal order of discriminant {}",
                        ring.disc()
                    )
                } else {
                    format!(
                        "Z[t,t^-1]/({f}) has discriminant {} and is not a maximal order",
                        ring.disc()
                    )
                };
                r.laurent = Some(Flag {
                    value: dedekind,
                    certificate,
                });
                r.provenance.insert("laurent".into(), Provenance::Computed);
            }
        }
    }
    match classify_para(g) {
        Ok(c) => {
            r.para_class_count = Some(c.count);
            r.provenance.insert("para_class_count".into(), c.provenance);
            notes.push(format!("para_class_count: {}", c.reason));
            if let Some(s) = &c.s_class {
                r.class_group = Some(s.full_classes.clone());
                r.s_class_group = Some(s.s_classes.clone());
                r.provenance
                    .insert("class_group".into(), Provenance::Computed);
                r.provenance
                    .insert("s_class_group".into(), Provenance::Computed);
            }
            for (j, real) in &c.representatives {
                let (a, b, cc) = j.hnf();
                r.representatives.push(Representative {
                    hnf: vec![a.clone(), b.clone(), cc.clone()],
                    action: real.action_j.clone(),
                    inclusion: real.inclusion.clone(),
                });
            }
        }
        Err(e) => notes.push(format!("para_class_count: {e}")),
    }
    Subject { report: r, notes }
}

/// Report for a named group preset.
pub fn group_report(preset: &str) -> Result<Subject> {
    Ok(classification(&make_group(preset)?))
}

/// Report for `Z ⋉ Z[ε]` with `ε` the fundamental unit of `Q(√d)`; the class
/// groups are those of the maximal order.
pub fn quad_report(d: &Int) -> Result<Subject> {
    if !is_squarefree(d) || *d < Int::from(2) {
        return Err(Error::Usage(format!(
            "d = {d} must be squarefree and at least 2"
        )));
    }
    let verdict = is_laurent_domain(d)?;
    let max = Ring::maximal_order(d)?;
    let g = make_group(&format!("quad:{d}"))?;
    let mut s = classification(&g);
    let r = &mut s.report;
    r.laurent = Some(Flag {
        value: verdict.laurent,
        certificate: format!(
            "ε = {}, N(ε) = {}, [D : Z[ε]] = {}",
            max.render(&verdict.unit),
            max.norm_form(&verdict.unit),
            verdict.index
        ),
    });
    r.provenance.insert("laurent".into(), Provenance::Computed);
    r.class_group = Some(compute_class_group(&max)?.structure);
    r.provenance
        .insert("class_group".into(), Provenance::Computed);
    if r.s_class_group.is_none() {
        let sc = s_class_group(&max)?;
        if let Some(note) = &sc.scope_note {
            s.notes.push(format!("s_class_group: {note}"));
        }
        s.report.s_class_group = Some(sc.s_classes);
        s.report
            .provenance
            .insert("s_class_group".into(), Provenance::Computed);
    }
    Ok(s)
}
