use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::docs::{EntourageDoc, PointDoc, SystemDoc};
use super::report::isolated_cylinder;
use super::system::{merge, DeskSystem, Entourage, FiniteSystem, ScaleParameters, ShiftSystem};
use super::verify::{
    finite_cell_witness, separated_after, shift_cell_witness, verify_mixing, verify_transitivity, SensitivityWitness,
};
use super::VerdictError;
use crate::group_actions::{
    coset_representatives, orbit_bounded, GroupElement, Orbit, RawElement, DEFAULT_COSET_RADIUS,
};
use crate::relation_algebra::{is_hausdorff_base, symmetric_root, Relation, RootOrder};
use crate::shift_spaces::{translate_pattern, w_related, Configuration, Pattern, ProdiscreteEntourage, ShiftAction};

/// Levels searched when separating two configurations.
const LEVEL_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Transitivity and dense periodic points.
    Main,
    /// Topological mixing of an infinite group.
    Mixing,
}

/// One (x, level) cell of the main route: the periodic point p near x, the
/// coset transversal T of its period subgroup H, the far orbit C with q ∈ C,
/// the point z of N ∩ U[x] with g₀z ∈ I = ⋂ₜ tU[t⁻¹q], and g₀ = t₀h₀.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTraceStep {
    pub x: PointDoc,
    pub level: usize,
    pub p: Option<PointDoc>,
    pub stabilizer_index: Option<usize>,
    pub transversal: Vec<RawElement>,
    pub far_orbit: Option<String>,
    pub q: Option<PointDoc>,
    pub i_support: Vec<RawElement>,
    pub z: Option<PointDoc>,
    pub g0: Option<RawElement>,
    pub t0: Option<RawElement>,
    pub h0: Option<RawElement>,
    /// Which side of the final disjunction held, or how the witness was found
    /// otherwise.
    pub alternative: String,
}

/// One (x, level) cell of the mixing route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixingTraceStep {
    pub x: PointDoc,
    pub level: usize,
    pub f1: Vec<RawElement>,
    pub f2: Vec<RawElement>,
    pub g: Option<RawElement>,
    pub y1: Option<PointDoc>,
    pub y2: Option<PointDoc>,
    pub alternative: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityCertificate {
    pub route: Route,
    /// The system the certificate speaks about, when known to the caller.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    pub parameters: ScaleParameters,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbit_a: Vec<PointDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbit_b: Vec<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x1: Option<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x2: Option<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<EntourageDoc>,
    pub v: EntourageDoc,
    pub u: EntourageDoc,
    pub witnesses: Vec<SensitivityWitness>,
    /// Cells for which no witness was found.
    pub missing: Vec<(PointDoc, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub main_trace: Vec<MainTraceStep>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mixing_trace: Vec<MixingTraceStep>,
}

impl SensitivityCertificate {
    pub fn entourage_u(&self, system: &DeskSystem) -> Result<Entourage, VerdictError> {
        self.u.build(system)
    }
}

fn first_separating_level(
    supports: &[GroupElement],
    a: &Configuration,
    b: &Configuration,
) -> Result<usize, VerdictError> {
    (1..=supports.len())
        .find(|&n| !w_related(&supports[..n], a, b))
        .ok_or_else(|| VerdictError::Hypothesis(format!("points not separated within {LEVEL_CAP} basis levels")))
}

fn raw(g: &GroupElement) -> RawElement {
    RawElement::from(g)
}

fn hypothesis(msg: &str) -> VerdictError {
    VerdictError::Hypothesis(msg.to_string())
}

/// The constructive proof that transitivity and dense periodic points force
/// sensitivity, executed at the system's scale.
pub fn construct_sensitivity_main(system: &DeskSystem) -> Result<SensitivityCertificate, VerdictError> {
    if let DeskSystem::Finite(f) = system {
        match is_hausdorff_base(f.base()) {
            Ok(true) => {}
            Ok(false) => return Err(hypothesis("base is not Hausdorff")),
            Err(e) => return Err(VerdictError::Hypothesis(e.to_string())),
        }
    }
    if !verify_transitivity(system).pass {
        return Err(hypothesis("topological transitivity not evidenced at scale"));
    }
    match system {
        DeskSystem::Shift(s) => main_shift(s),
        DeskSystem::Finite(f) => main_finite(f),
    }
}

fn shift_orbits(s: &ShiftSystem) -> Result<Vec<Vec<Configuration>>, VerdictError> {
    let action = ShiftAction::new(s.group());
    let mut orbits: Vec<Vec<Configuration>> = Vec::new();
    for x in s.sample().iter().filter(|x| x.period().is_some()) {
        if orbits.iter().any(|o| o.contains(x)) {
            continue;
        }
        if let Orbit::Finite(points) = orbit_bounded(&action, x, s.params().period_bound)? {
            orbits.push(points);
        }
        if orbits.len() == 2 {
            break;
        }
    }
    Ok(orbits)
}

fn main_shift(s: &ShiftSystem) -> Result<SensitivityCertificate, VerdictError> {
    let params = s.params();
    let orbits = shift_orbits(s)?;
    let [a, b] = orbits.as_slice() else {
        return Err(hypothesis("fewer than two disjoint finite orbits"));
    };
    // transitive with dense periodic points: infinite iff no isolated points
    if let Some(cell) = isolated_cylinder(s) {
        return Err(VerdictError::Hypothesis(format!(
            "the space is not evidenced infinite at scale: {cell} is isolated"
        )));
    }
    let supports = s.group().first_elements(LEVEL_CAP);
    // Lemma: intersect one separating basis element per pair; the basis is
    // nested, so the intersection is the deepest of them
    let mut level = 0;
    for x in a {
        for y in b {
            level = level.max(first_separating_level(&supports, x, y)?);
        }
    }
    let w = ProdiscreteEntourage::new(supports[..level].iter().cloned());
    // W(Ω) is an equivalence relation: both roots are W itself
    let v = w.clone();
    let u = v.clone();

    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let mut trace = Vec::new();
    for x in s.sample() {
        for n in 1..=params.scale {
            let step = main_cell(s, x, n, &u, &v, a, b);
            match &step.1 {
                Some((y, g)) => witnesses.push(SensitivityWitness {
                    x: PointDoc::Configuration(s.doc(x)),
                    level: n,
                    y: PointDoc::Configuration(s.doc(y)),
                    g: raw(g),
                }),
                None => missing.push((PointDoc::Configuration(s.doc(x)), n)),
            }
            trace.push(step.0);
        }
    }
    let docs = |o: &[Configuration]| o.iter().map(|c| PointDoc::Configuration(s.doc(c))).collect();
    Ok(SensitivityCertificate {
        route: Route::Main,
        system: None,
        parameters: params,
        orbit_a: docs(a),
        orbit_b: docs(b),
        x1: None,
        x2: None,
        w: Some(EntourageDoc::from(&Entourage::Prodiscrete(w))),
        v: EntourageDoc::from(&Entourage::Prodiscrete(v)),
        u: EntourageDoc::from(&Entourage::Prodiscrete(u)),
        witnesses,
        missing,
        main_trace: trace,
        mixing_trace: Vec::new(),
    })
}

fn main_cell(
    s: &ShiftSystem,
    x: &Configuration,
    level: usize,
    u: &ProdiscreteEntourage,
    v: &ProdiscreteEntourage,
    a: &[Configuration],
    b: &[Configuration],
) -> (MainTraceStep, Option<(Configuration, GroupElement)>) {
    let group = s.group();
    let doc = |c: &Configuration| PointDoc::Configuration(s.doc(c));
    let mut step = MainTraceStep {
        x: doc(x),
        level,
        p: None,
        stabilizer_index: None,
        transversal: Vec::new(),
        far_orbit: None,
        q: None,
        i_support: Vec::new(),
        z: None,
        g0: None,
        t0: None,
        h0: None,
        alternative: String::new(),
    };
    let fallback = |mut step: MainTraceStep| {
        let found = shift_cell_witness(s, u, x, level);
        step.alternative = if found.is_some() { "search" } else { "none" }.to_string();
        (step, found)
    };

    // N ∩ U[x] is the cylinder of x on Ω_level ∪ Ω_U
    let near: Pattern = x.restrict(s.support(level).iter().chain(u.support()));
    let Some(p) = s.realize(&near) else { return fallback(step) };
    let Configuration::Periodic(periodic) = &p else { return fallback(step) };
    let h = periodic.subgroup().clone();
    let Ok(transversal) = coset_representatives(&h, DEFAULT_COSET_RADIUS) else {
        return fallback(step);
    };
    step.p = Some(doc(&p));
    step.stabilizer_index = Some(h.index());
    step.transversal = transversal.iter().map(raw).collect();

    let x_on_v = v.section(x);
    let misses = |orbit: &[Configuration]| orbit.iter().all(|c| c.restrict(v.support()) != x_on_v);
    let (name, far) = if misses(a) {
        ("A", a)
    } else if misses(b) {
        ("B", b)
    } else {
        return fallback(step);
    };
    let q = &far[0];
    step.far_orbit = Some(name.to_string());
    step.q = Some(doc(q));

    let i_support: BTreeSet<GroupElement> = transversal
        .iter()
        .flat_map(|t| u.support().iter().map(move |w| group.op(t, w)))
        .collect();
    let i_pattern = q.restrict(&i_support);
    step.i_support = i_support.iter().map(raw).collect();

    let found = s.ball().iter().find_map(|g0| {
        let pulled = translate_pattern(group, &group.inverse(g0), &i_pattern);
        merge(&near, &pulled).and_then(|c| s.realize(&c)).map(|z| (g0.clone(), z))
    });
    let Some((g0, z)) = found else { return fallback(step) };
    let key = h.left_coset_key(&g0);
    let t0 = transversal
        .iter()
        .find(|t| h.left_coset_key(t) == key)
        .expect("transversal meets every coset")
        .clone();
    let h0 = group.op(&group.inverse(&t0), &g0);
    step.z = Some(doc(&z));
    step.g0 = Some(raw(&g0));
    step.t0 = Some(raw(&t0));
    step.h0 = Some(raw(&h0));

    if separated_after(group, &h0, x, &p, u) {
        step.alternative = "(h0 x, p) outside U".to_string();
        (step, Some((p, h0)))
    } else if separated_after(group, &h0, x, &z, u) {
        step.alternative = "(h0 x, h0 z) outside U".to_string();
        (step, Some((z, h0)))
    } else {
        fallback(step)
    }
}

/// A finite Hausdorff space is discrete, so the theorem never applies; the
/// orbit search still runs to name the first hypothesis that fails.
fn main_finite(f: &FiniteSystem) -> Result<SensitivityCertificate, VerdictError> {
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for x in 0..f.size() {
        if orbits.iter().any(|o| o.contains(&x)) {
            continue;
        }
        if let Orbit::Finite(points) = orbit_bounded(f.action(), &x, f.params().period_bound)? {
            orbits.push(points);
        }
        if orbits.len() == 2 {
            break;
        }
    }
    if orbits.len() < 2 {
        return Err(hypothesis("fewer than two disjoint finite orbits"));
    }
    Err(hypothesis("the space is finite"))
}

fn finite_witnesses(f: &FiniteSystem, u: &Relation) -> (Vec<SensitivityWitness>, Vec<(PointDoc, usize)>) {
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for x in 0..f.size() {
        for level in 0..f.base().relations().len() {
            let name = PointDoc::Carrier(f.name(x).to_string());
            match finite_cell_witness(f, u, x, level) {
                Some((y, g)) => witnesses.push(SensitivityWitness {
                    x: name,
                    level,
                    y: PointDoc::Carrier(f.name(y).to_string()),
                    g: raw(&g),
                }),
                None => missing.push((name, level)),
            }
        }
    }
    (witnesses, missing)
}

/// The constructive proof that a mixing action of an infinite group is
/// sensitive, started from two distinct points.
pub fn construct_sensitivity_mixing(
    system: &DeskSystem,
    x1: &PointDoc,
    x2: &PointDoc,
) -> Result<SensitivityCertificate, VerdictError> {
    if x1 == x2 {
        return Err(VerdictError::Argument("x1 and x2 must be distinct points".into()));
    }
    if system.group().is_finite() {
        return Err(hypothesis("the group is finite"));
    }
    match system {
        DeskSystem::Shift(s) => {
            let p1 = x1.configuration(s)?;
            let p2 = x2.configuration(s)?;
            if p1 == p2 {
                return Err(VerdictError::Argument("x1 and x2 must be distinct points".into()));
            }
            for (name, p) in [("x1", &p1), ("x2", &p2)] {
                if !s.contains(p) {
                    return Err(VerdictError::Argument(format!("{name} is not a point of the subshift")));
                }
            }
            if !verify_mixing(system).pass {
                return Err(hypothesis("topological mixing not evidenced at scale"));
            }
            mixing_shift(s, &p1, &p2, x1, x2)
        }
        DeskSystem::Finite(f) => {
            let p1 = x1.carrier_point(f)?;
            let p2 = x2.carrier_point(f)?;
            if !verify_mixing(system).pass {
                return Err(hypothesis("topological mixing not evidenced at scale"));
            }
            let base = f.base();
            let v = base
                .relations()
                .iter()
                .find(|r| !r.contains(p1, p2))
                .ok_or_else(|| hypothesis("no base entourage separates x1 and x2"))?
                .clone();
            let u = symmetric_root(&v, base, RootOrder::Fourth)?;
            let (witnesses, missing) = finite_witnesses(f, &u);
            Ok(SensitivityCertificate {
                route: Route::Mixing,
                system: None,
                parameters: f.params(),
                orbit_a: Vec::new(),
                orbit_b: Vec::new(),
                x1: Some(x1.clone()),
                x2: Some(x2.clone()),
                w: None,
                v: EntourageDoc::from(&Entourage::Relation(v)),
                u: EntourageDoc::from(&Entourage::Relation(u)),
                witnesses,
                missing,
                main_trace: Vec::new(),
                mixing_trace: Vec::new(),
            })
        }
    }
}

fn mixing_shift(
    s: &ShiftSystem,
    x1: &Configuration,
    x2: &Configuration,
    d1: &PointDoc,
    d2: &PointDoc,
) -> Result<SensitivityCertificate, VerdictError> {
    let params = s.params();
    let group = s.group();
    let supports = group.first_elements(LEVEL_CAP);
    let level = first_separating_level(&supports, x1, x2)?;
    let v = ProdiscreteEntourage::new(supports[..level].iter().cloned());
    let u = v.clone();
    let doc = |c: &Configuration| PointDoc::Configuration(s.doc(c));

    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let mut trace = Vec::new();
    for x in s.sample() {
        for n in 1..=params.scale {
            let near: Pattern = x.restrict(s.support(n).iter().chain(u.support()));
            // y with gy ∈ U[xᵢ] means y(g⁻¹ω) = xᵢ(ω) on Ω_U
            let hit = |g: &GroupElement, target: &Configuration| {
                let pulled = translate_pattern(group, &group.inverse(g), &u.section(target));
                merge(&near, &pulled).filter(|c| s.realizable(c))
            };
            let f1: Vec<&GroupElement> = s.ball().iter().filter(|g| hit(g, x1).is_none()).collect();
            let f2: Vec<&GroupElement> = s.ball().iter().filter(|g| hit(g, x2).is_none()).collect();
            let mut step = MixingTraceStep {
                x: doc(x),
                level: n,
                f1: f1.iter().map(|g| raw(g)).collect(),
                f2: f2.iter().map(|g| raw(g)).collect(),
                g: None,
                y1: None,
                y2: None,
                alternative: String::new(),
            };
            let chosen = s.ball().iter().find(|g| !f1.contains(g) && !f2.contains(g)).and_then(|g| {
                let y1 = s.realize(&hit(g, x1)?)?;
                let y2 = s.realize(&hit(g, x2)?)?;
                Some((g.clone(), y1, y2))
            });
            let mut found = None;
            if let Some((g, y1, y2)) = chosen {
                step.g = Some(raw(&g));
                step.y1 = Some(doc(&y1));
                step.y2 = Some(doc(&y2));
                if separated_after(group, &g, x, &y1, &u) {
                    step.alternative = "(gx, gy1) outside U".to_string();
                    found = Some((y1, g));
                } else if separated_after(group, &g, x, &y2, &u) {
                    step.alternative = "(gx, gy2) outside U".to_string();
                    found = Some((y2, g));
                }
            }
            if found.is_none() {
                found = shift_cell_witness(s, &u, x, n);
                step.alternative = if found.is_some() { "search" } else { "none" }.to_string();
            }
            match found {
                Some((y, g)) => witnesses.push(SensitivityWitness {
                    x: doc(x),
                    level: n,
                    y: doc(&y),
                    g: raw(&g),
                }),
                None => missing.push((doc(x), n)),
            }
            trace.push(step);
        }
    }
    Ok(SensitivityCertificate {
        route: Route::Mixing,
        system: None,
        parameters: params,
        orbit_a: Vec::new(),
        orbit_b: Vec::new(),
        x1: Some(d1.clone()),
        x2: Some(d2.clone()),
        w: None,
        v: EntourageDoc::from(&Entourage::Prodiscrete(v)),
        u: EntourageDoc::from(&Entourage::Prodiscrete(u)),
        witnesses,
        missing,
        main_trace: Vec::new(),
        mixing_trace: trace,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Revalidation {
    pub pass: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, pass: bool, detail: Option<String>) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail: if pass { None } else { detail },
    }
}

/// `a` contained in `b`, given that `a` is an equivalence relation or a
/// relation whose k-fold composite is meant.
fn composite_inside(a: &Entourage, k: usize, b: &Entourage) -> Result<bool, VerdictError> {
    match (a, b) {
        (Entourage::Relation(r), Entourage::Relation(t)) => Ok(r.power(k).is_subset(t)?),
        // W(Ω)^k = W(Ω), and W(Ω) ⊆ W(Ω') when Ω ⊇ Ω'
        (Entourage::Prodiscrete(r), Entourage::Prodiscrete(t)) => Ok(r.support().is_superset(t.support())),
        _ => Err(VerdictError::Argument("entourages of different kinds".into())),
    }
}

fn related(system: &DeskSystem, e: &Entourage, x: &PointDoc, y: &PointDoc) -> Result<bool, VerdictError> {
    Ok(match (system, e) {
        (DeskSystem::Finite(f), Entourage::Relation(r)) => r.contains(x.carrier_point(f)?, y.carrier_point(f)?),
        (DeskSystem::Shift(s), Entourage::Prodiscrete(w)) => w.contains(&x.configuration(s)?, &y.configuration(s)?),
        _ => return Err(VerdictError::Argument("entourage kind does not match the system".into())),
    })
}

fn witness_holds(system: &DeskSystem, u: &Entourage, w: &SensitivityWitness) -> Result<bool, VerdictError> {
    let g = system.group().parse_element(&w.g)?;
    Ok(match (system, u) {
        (DeskSystem::Shift(s), Entourage::Prodiscrete(u)) => {
            let x = w.x.configuration(s)?;
            let y = w.y.configuration(s)?;
            w.level >= 1
                && s.contains(&y)
                && w_related(&s.support(w.level), &x, &y)
                && separated_after(s.group(), &g, &x, &y, u)
        }
        (DeskSystem::Finite(f), Entourage::Relation(r)) => {
            let x = w.x.carrier_point(f)?;
            let y = w.y.carrier_point(f)?;
            let Ok(image) = f.action().image(&g) else { return Ok(false) };
            w.level < f.base().relations().len()
                && f.base().relations()[w.level].contains(x, y)
                && !r.contains(image[x], image[y])
        }
        _ => return Err(VerdictError::Argument("entourage kind does not match the system".into())),
    })
}

/// Re-checks every stored claim by direct evaluation; no search is rerun.
pub fn revalidate(cert: &SensitivityCertificate, system: &DeskSystem) -> Result<Revalidation, VerdictError> {
    let u = cert.u.build(system)?;
    let v = cert.v.build(system)?;
    let mut checks = Vec::new();
    let symmetric = match &u {
        Entourage::Relation(r) => r.is_symmetric(),
        Entourage::Prodiscrete(_) => true,
    };
    checks.push(check("U is symmetric", symmetric, None));
    checks.push(check("U∘U∘U∘U ⊆ V", composite_inside(&u, 4, &v)?, None));
    match cert.route {
        Route::Main => {
            let w = cert
                .w
                .as_ref()
                .ok_or_else(|| VerdictError::Argument("main-route certificate without W".into()))?
                .build(system)?;
            checks.push(check("V∘V ⊆ W", composite_inside(&v, 2, &w)?, None));
            let mut bad = None;
            'pairs: for a in &cert.orbit_a {
                for b in &cert.orbit_b {
                    if related(system, &w, a, b)? {
                        bad = Some(format!("{a:?} and {b:?} are W-close"));
                        break 'pairs;
                    }
                }
            }
            let nonempty = !cert.orbit_a.is_empty() && !cert.orbit_b.is_empty();
            checks.push(check("(A × B) ∩ W = ∅", nonempty && bad.is_none(), bad));
        }
        Route::Mixing => {
            let (Some(x1), Some(x2)) = (&cert.x1, &cert.x2) else {
                return Err(VerdictError::Argument("mixing-route certificate without x1, x2".into()));
            };
            checks.push(check("(x1, x2) ∉ V", !related(system, &v, x1, x2)?, None));
        }
    }
    let mut first_bad = None;
    for (i, w) in cert.witnesses.iter().enumerate() {
        if !witness_holds(system, &u, w)? {
            first_bad = Some(format!("witness {i} fails"));
            break;
        }
    }
    checks.push(check("every witness has y ∈ N and (gx, gy) ∉ U", first_bad.is_none(), first_bad));
    Ok(Revalidation {
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}
