use std::sync::Arc;

use semifield::algebra::{is_division, structured_search, FiniteAlgebra, Nuclei};
use semifield::aut::{brute_force_aut, inner_auts, matrices, structured_automorphisms, DEFAULT_ORACLE_BOUND};
use semifield::iso::{classify_cyclic, cyclic_aut_profile, iso_test, noniso_certificates, IsoVerdict, NonIso};
use semifield::knuth::{
    family_automorphisms, family_brute_force, family_fingerprints, fingerprint, kn1_alternate_conditions,
    stabilizer_check, Family, FamilyAlgebra,
};
use semifield::petit::t_m_minus;
use semifield::text::{format_poly_symbolic, parse_elem, parse_poly};
use semifield::verify;
use semifield::{Elem, Error, FieldTower, Group, GroupId, Matrix, PetitAlgebra, SkewPoly};
use serde_json::{json, Value};

use crate::spec::{Command, JobSpec};

/// Gl-search limit for the unrestricted Kn_1 comparison.
const KN1_GL_ORDER: u128 = 16;

#[derive(Debug)]
pub struct CliError {
    pub status: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Hypothesis(_) => 3,
            Error::OracleBound { .. } => 4,
            Error::NotClosed => 1,
            _ => 2,
        };
        CliError { status, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { status: 2, message: msg.into() }
}

pub struct Outcome {
    /// A single report, or one record per line for catalogs.
    pub records: Vec<Value>,
    pub status: i32,
    /// Printed on stderr alongside a nonzero status.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { records: vec![report], status: 0, diagnostic: None }
    }
}

struct Job<'a> {
    spec: &'a JobSpec,
    bound: u128,
}

pub fn run(spec: &JobSpec) -> Result<Outcome, CliError> {
    let command = spec.command.ok_or_else(|| usage("no command given"))?;
    let job = Job { spec, bound: spec.oracle_bound.unwrap_or(DEFAULT_ORACLE_BOUND) };
    let mut out = match command {
        Command::Construct => job.construct()?,
        Command::Aut => job.aut()?,
        Command::Iso => job.iso()?,
        Command::Classify => job.classify()?,
        Command::Family => job.family()?,
        Command::Verify => job.verify()?,
        Command::Catalog => job.catalog()?,
    };
    let canonical = spec.canonical();
    for r in &mut out.records {
        r["spec"] = Value::String(canonical.clone());
    }
    Ok(out)
}

fn tower_json(t: &FieldTower) -> Value {
    json!({ "p": t.p(), "r": t.r(), "n": t.n(), "q": t.q(), "size": t.size(), "modulus": t.modulus() })
}

fn nuclei_json(nu: &Nuclei) -> Value {
    let dims = nu.f_dims();
    json!({
        "left_dim": dims[0],
        "middle_dim": dims[1],
        "right_dim": dims[2],
        "nucleus_dim": nu.nucleus.f_dim,
        "center_dim": nu.center.f_dim,
        "k_in_left_middle_right": nu.k_in,
    })
}

fn poly_json(t: &FieldTower, f: &SkewPoly) -> Value {
    json!({ "text": format_poly_symbolic(t, f), "coefficients": f.coeffs() })
}

fn elem_json(t: &FieldTower, e: Elem) -> Value {
    json!({ "encoding": e, "text": t.format_symbolic(e) })
}

fn group_json(id: &GroupId, labels: &[Value]) -> Value {
    json!({
        "order": id.order,
        "tag": id.tag.to_string(),
        "generators": id.generators.iter().map(|&g| labels.get(g).cloned().unwrap_or(json!(g))).collect::<Vec<_>>(),
        "relations": id.relations,
        "element_orders": id.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
    })
}

fn identify_maps(maps: Vec<Matrix>, p: u32) -> Result<GroupId, CliError> {
    Ok(semifield::group::identify(&Group::from_maps(maps, p)?))
}

impl Job<'_> {
    fn tower(&self, n_fallback: Option<u32>) -> Result<Arc<FieldTower>, CliError> {
        let s = self.spec;
        let p = s.p.ok_or_else(|| usage("--p is required"))?;
        let n = s.n.or(n_fallback).ok_or_else(|| usage("--n is required"))?;
        Ok(Arc::new(FieldTower::new(p, s.r.unwrap_or(1), n)?))
    }

    fn elem(&self, t: &FieldTower, text: &Option<String>, flag: &str) -> Result<Elem, CliError> {
        let text = text.as_deref().ok_or_else(|| usage(format!("--{flag} is required")))?;
        Ok(parse_elem(t, text)?)
    }

    /// `S_f` from `--f`, `--g`, or `t^m - a` from `--a`.
    fn petit(&self, t: &Arc<FieldTower>, which: &str) -> Result<PetitAlgebra, CliError> {
        let s = self.spec;
        let text = if which == "g" { &s.g } else { &s.f };
        let f = match (text, &s.a) {
            (Some(text), _) => parse_poly(t, text)?,
            (None, Some(_)) if which == "f" => {
                let a = self.elem(t, &s.a, "a")?;
                t_m_minus(t, s.m.unwrap_or(t.n()) as usize, a)
            }
            _ => return Err(usage(format!("--{which} is required"))),
        };
        Ok(PetitAlgebra::from_tower(t.clone(), f)?)
    }

    fn family_alg(&self, t: &Arc<FieldTower>, family: Family) -> Result<FamilyAlgebra, CliError> {
        let eta = self.elem(t, &self.spec.eta, "eta")?;
        let mu = match &self.spec.mu {
            Some(_) => self.elem(t, &self.spec.mu, "mu")?,
            None => Elem::ZERO,
        };
        Ok(FamilyAlgebra::new(t.clone(), family, eta, mu)?)
    }

    fn construct(&self) -> Result<Outcome, CliError> {
        let t = self.tower(None)?;
        if let Some(family) = self.spec.family {
            let alg = self.family_alg(&t, family)?;
            let fp = fingerprint(&alg);
            let mut report = json!({
                "tower": tower_json(&t),
                "family": family,
                "eta": elem_json(&t, alg.eta()),
                "mu": elem_json(&t, alg.mu()),
                "f": poly_json(&t, &alg.f()),
                "order": alg.order(),
                "division": alg.f_irreducible(),
                "nuclei_dims": fp.dims,
                "k_in_left_middle_right": fp.k_in,
                "center_dim": fp.center_dim,
            });
            if alg.order() <= self.bound {
                report["division_by_scan"] = json!(is_division(&alg, self.bound)?);
            }
            return Ok(Outcome::ok(report));
        }
        let alg = self.petit(&t, "f")?;
        let mut report = json!({
            "tower": tower_json(&t),
            "f": poly_json(&t, alg.f()),
            "m": alg.m(),
            "order": alg.order(),
            "irreducible": alg.is_irreducible(),
            "right_invariant": alg.is_right_invariant(),
            "proper_semifield": alg.is_proper_semifield(),
            "nuclei": nuclei_json(alg.nuclei()),
        });
        if alg.order() <= self.bound {
            report["division_by_scan"] = json!(is_division(&alg, self.bound)?);
        }
        Ok(Outcome::ok(report))
    }

    fn aut(&self) -> Result<Outcome, CliError> {
        if self.spec.family.is_some() {
            return self.family();
        }
        let t = self.tower(None)?;
        let alg = self.petit(&t, "f")?;
        let sol = structured_automorphisms(&alg)?;
        let labels: Vec<Value> = sol
            .maps
            .iter()
            .map(|m| serde_json::to_value(&m.kind).expect("serializable"))
            .collect();
        let structured = matrices(&sol.maps);
        let mut report = json!({
            "tower": tower_json(&t),
            "f": poly_json(&t, alg.f()),
            "pairs": sol.pairs,
            "complete": sol.complete,
            "inner_count": inner_auts(&alg, &alg.nuclei().nucleus).len(),
        });
        if sol.complete {
            report["group"] = group_json(&identify_maps(structured.clone(), t.p())?, &labels);
            report["oracle"] = if alg.order() <= self.bound {
                let brute = matrices(&brute_force_aut(&alg, self.bound)?);
                json!(if brute == sorted(structured) { "agrees" } else { "DISAGREES" })
            } else {
                json!(format!("skipped: order {} exceeds bound {}", alg.order(), self.bound))
            };
        } else {
            // structured maps form a subgroup only; the oracle gives the full group
            let brute = matrices(&brute_force_aut(&alg, self.bound)?);
            report["structured_group"] = group_json(&identify_maps(structured, t.p())?, &labels);
            report["group"] = group_json(&identify_maps(brute, t.p())?, &[]);
            report["oracle"] = json!("full group by brute force");
        }
        Ok(Outcome::ok(report))
    }

    fn iso(&self) -> Result<Outcome, CliError> {
        let t = self.tower(None)?;
        let fa = self.petit(&t, "f")?;
        let ga = self.petit(&t, "g")?;
        let verdict = iso_test(&fa, &ga)?;
        let mut report = json!({
            "tower": tower_json(&t),
            "f": poly_json(&t, fa.f()),
            "g": poly_json(&t, ga.f()),
            "verdict": verdict,
        });
        let same_degree = fa.m() == ga.m();
        if same_degree && t.n() as usize + 1 >= fa.m() {
            report["certificates"] = json!(noniso_certificates(&fa, &ga)?);
        }
        let decided = !matches!(verdict, IsoVerdict::NotIsomorphic(NonIso::NoWitness { definitive: false }));
        if !same_degree {
            report["oracle"] = json!("not needed: degrees differ");
        } else if decided && fa.order() > self.bound {
            report["oracle"] = json!(format!("skipped: order {} exceeds bound {}", fa.order(), self.bound));
        } else {
            let found = !structured_search(&fa, &ga, self.bound)?.is_empty();
            report["oracle"] = if decided {
                json!(if found == verdict.is_iso() { "agrees" } else { "DISAGREES" })
            } else {
                json!(if found { "isomorphic by brute force" } else { "not isomorphic by brute force" })
            };
        }
        Ok(Outcome::ok(report))
    }

    fn classify(&self) -> Result<Outcome, CliError> {
        let m = self.spec.m.or(self.spec.n).ok_or_else(|| usage("--m is required"))?;
        let t = self.tower(Some(m))?;
        if t.n() != m {
            return Err(usage("classification needs m = n"));
        }
        let rep = classify_cyclic(&t);
        let classes: Vec<Value> = rep
            .classes
            .iter()
            .map(|c| json!({ "representative": elem_json(&t, c.representative), "size": c.size }))
            .collect();
        Ok(Outcome::ok(json!({
            "tower": tower_json(&t),
            "q": rep.q,
            "m": rep.m,
            "count": rep.count,
            "classes": classes,
            "formula": rep.formula,
            "formula_case": rep.formula_case,
            "formula_matches": rep.matches,
        })))
    }

    fn family(&self) -> Result<Outcome, CliError> {
        let t = self.tower(None)?;
        let Some(family) = self.spec.family else {
            let eta = self.elem(&t, &self.spec.eta, "eta")?;
            let mu = match &self.spec.mu {
                Some(_) => self.elem(&t, &self.spec.mu, "mu")?,
                None => Elem::ZERO,
            };
            let fp = family_fingerprints(t.clone(), eta, mu)?;
            let report = json!({ "tower": tower_json(&t), "fingerprints": fp });
            if fp.coincide {
                return Ok(Outcome {
                    records: vec![report],
                    status: 3,
                    diagnostic: Some("hypothesis violated: sigma^2 = id and mu = 0, all four families coincide".into()),
                });
            }
            return Ok(Outcome::ok(report));
        };
        let alg = self.family_alg(&t, family)?;
        let rep = family_automorphisms(&alg)?;
        let labels: Vec<Value> = rep.maps.iter().map(|m| serde_json::to_value(&m.kind).expect("serializable")).collect();
        let mut report = json!({
            "tower": tower_json(&t),
            "family": family,
            "eta": elem_json(&t, alg.eta()),
            "mu": elem_json(&t, alg.mu()),
            "pairs": rep.pairs,
            "method": rep.method,
            "complete": rep.complete,
            "group": group_json(&rep.group, &labels),
        });
        if !alg.mu().is_zero() && family != Family::Kn1 {
            report["stabilizer"] = json!(stabilizer_check(&alg, &rep)?);
        }
        let found = sorted(matrices(&rep.maps));
        if family == Family::Kn1 {
            let (alternate, good) = kn1_alternate_conditions(&alg);
            report["alternate_conditions"] = json!({ "pairs": alternate, "automorphisms": good });
            report["oracle"] = if alg.order() <= KN1_GL_ORDER.min(self.bound) && t.r() == 1 {
                let all = family_brute_force(&alg, self.bound)?;
                let subset = found.iter().all(|m| all.binary_search(m).is_ok());
                json!({
                    "all_automorphisms": all.len(),
                    "restricted_is_subset": subset,
                    "restricted_is_all": subset && all.len() == found.len(),
                })
            } else {
                json!(format!("unrestricted search only at order <= {KN1_GL_ORDER}"))
            };
        } else if alg.order() <= self.bound {
            let brute = family_brute_force(&alg, self.bound)?;
            report["oracle"] = json!(if brute == found { "agrees" } else { "DISAGREES" });
        } else {
            report["oracle"] = json!(format!("skipped: order {} exceeds bound {}", alg.order(), self.bound));
        }
        Ok(Outcome::ok(report))
    }

    fn verify(&self) -> Result<Outcome, CliError> {
        let results = verify::run_all()?;
        let passed = results.iter().filter(|c| c.pass).count();
        let status = if passed == results.len() { 0 } else { 1 };
        let report = json!({ "criteria": results, "passed": passed, "total": results.len() });
        Ok(Outcome { records: vec![report], status, diagnostic: None })
    }

    fn catalog(&self) -> Result<Outcome, CliError> {
        let m = self.spec.m.or(self.spec.n).ok_or_else(|| usage("--m is required"))?;
        let t = self.tower(Some(m))?;
        if t.n() != m {
            return Err(usage("catalogs need m = n"));
        }
        let rep = classify_cyclic(&t);
        let mut records = Vec::new();
        for c in &rep.classes {
            let (order, tag) = match cyclic_aut_profile(t.clone(), c.representative) {
                Ok(profile) => (json!(profile.order), json!(profile.group.tag.to_string())),
                Err(Error::Hypothesis(_)) => (Value::Null, json!("not a semifield")),
                Err(e) => return Err(e.into()),
            };
            records.push(json!({
                "q": rep.q,
                "m": rep.m,
                "representative": c.representative,
                "representative_text": t.format_symbolic(c.representative),
                "class_size": c.size,
                "aut_order": order,
                "group": tag,
            }));
        }
        Ok(Outcome { records, status: 0, diagnostic: None })
    }
}

fn sorted(mut v: Vec<Matrix>) -> Vec<Matrix> {
    v.sort();
    v
}
