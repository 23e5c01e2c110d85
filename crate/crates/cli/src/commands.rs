//! One function per subcommand. Each returns the text rendering, the JSON
//! rendering and the exit status; `main` picks the rendering.

use crate::overrides::Overrides;
use degmap_core::abgroup::SubsetRepr;
use degmap_core::rootdata::format_coords;
use degmap_core::titsalg::tits_table;
use degmap_core::verifier::{enumerate_states, StateRecord};
use degmap_core::{
    omega, verify_all, x_phi, Cocharacter, Corollary, Error, FieldState, Kind, Report, Result, RootSystem,
    Scenario, ScenarioKind, Subset, TitsIndex, Verdict, Verifier, VertexSet,
};
use serde::Serialize;
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

pub struct Output {
    pub text: String,
    pub json: String,
    pub code: i32,
}

impl Output {
    fn new<T: Serialize>(text: String, value: &T, code: i32) -> Self {
        let json = serde_json::to_string_pretty(value).expect("report types serialize");
        Self { text, json, code }
    }
}

/// Display options shared by all subcommands.
#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub coords: bool,
    pub verbose: u8,
}

/// Maps a library error to its exit status.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_USAGE,
        Error::Capability(_) | Error::Overflow(_) => EXIT_CAPABILITY,
    }
}

pub struct ScenarioChoice<'a> {
    pub name: &'a str,
    pub rank: Option<usize>,
    pub mirror: bool,
    pub overrides: Option<&'a Overrides>,
}

impl ScenarioChoice<'_> {
    pub fn build(&self) -> Result<Scenario> {
        let kind: ScenarioKind = self.name.parse()?;
        if self.mirror && kind != ScenarioKind::E6 {
            return Err(Error::Input(format!("--mirror only applies to e6, not {kind}")));
        }
        let s = Scenario::build(kind, self.rank, self.mirror)?;
        match self.overrides {
            Some(o) => o.apply(s).map_err(|e| Error::Input(format!("override file {e}"))),
            None => Ok(s),
        }
    }
}

fn center_name(rs: &RootSystem, x: &[i64], style: Style) -> String {
    if style.coords {
        format_coords(x)
    } else {
        rs.name_of(x)
    }
}

/// Elements of `μ(−1)` get `C*` names when the two groups coincide.
fn mu_name(s: &Scenario, x: &[i64], style: Style) -> String {
    if s.mu_twist() == s.rootsystem().center() {
        center_name(s.rootsystem(), x, style)
    } else {
        format_coords(x)
    }
}

fn subset_names(s: &Subset, name: impl Fn(&[i64]) -> String) -> Vec<String> {
    match s.repr() {
        SubsetRepr::Finite(set) => set.iter().map(|x| name(x)).collect(),
        SubsetRepr::Coset { base, generators } => {
            let gens: Vec<String> = generators.iter().map(|g| name(g)).collect();
            vec![format!("{} + <{}>", name(base), gens.join(", "))]
        }
    }
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn disc_word(disc: bool) -> &'static str {
    if disc {
        "trivial"
    } else {
        "nontrivial"
    }
}

fn vertices(s: VertexSet) -> Vec<usize> {
    s.iter().collect()
}

#[derive(Serialize)]
struct CenterRow {
    vertex: usize,
    class: String,
    coords: Vec<i64>,
    tits: String,
}

#[derive(Serialize)]
struct CenterJson {
    root_system: String,
    group: String,
    invariant_factors: Vec<i64>,
    order: Option<u64>,
    elements: Vec<String>,
    restrictions: Vec<CenterRow>,
}

pub fn center(kind: &str, rank: usize, style: Style) -> Result<Output> {
    let kind: Kind = kind.parse()?;
    let table = tits_table(kind, rank)?;
    let rs = table.rootsystem();
    let c = rs.center();
    let elements: Vec<String> = c.elements()?.iter().map(|x| center_name(rs, x, style)).collect();
    let rows: Vec<CenterRow> = (1..=rank)
        .map(|i| {
            let x = rs.restriction(i);
            CenterRow { vertex: i, class: center_name(rs, &x, style), coords: x, tits: table.label(i) }
        })
        .collect();
    let mut text = String::new();
    let order = c.order();
    let _ = writeln!(text, "{}: C* = {c} (order {})", rs.label(), order.unwrap_or(0));
    let _ = writeln!(text, "elements: {}", elements.join(", "));
    let _ = writeln!(text, "{:<7} {:<8} tits", "vertex", "class");
    for r in &rows {
        let _ = writeln!(text, "{:<7} {:<8} {}", r.vertex, r.class, r.tits);
    }
    let json = CenterJson {
        root_system: rs.label(),
        group: c.to_string(),
        invariant_factors: c.invariant_factors().to_vec(),
        order,
        elements,
        restrictions: rows,
    };
    Ok(Output::new(text, &json, EXIT_OK))
}

#[derive(Serialize)]
struct XPhiJson {
    scenario: String,
    rank: usize,
    p: i64,
    phi: i64,
    residue: i64,
    modulus: i64,
    disc: String,
    alpha_preimage: Vec<String>,
    beta_image: Vec<String>,
    gamma_preimage: Vec<String>,
    fixed: Vec<String>,
    x_phi: Vec<String>,
}

pub fn xphi(choice: &ScenarioChoice, phi: i64, disc: bool, style: Style) -> Result<Output> {
    let s = choice.build()?;
    let x = x_phi(&s, disc, Cocharacter(phi))?;
    let rs = s.rootsystem();
    let cname = |v: &[i64]| center_name(rs, v, style);
    let json = XPhiJson {
        scenario: s.name().into(),
        rank: s.rank(),
        p: s.p(),
        phi,
        residue: x.residue,
        modulus: s.phi_period()?,
        disc: disc_word(disc).into(),
        alpha_preimage: subset_names(&x.alpha_preimage, |v| format_coords(v).trim_matches(['(', ')']).to_string()),
        beta_image: subset_names(&x.beta_image, |v| mu_name(&s, v, style)),
        gamma_preimage: subset_names(&x.gamma_preimage, cname),
        fixed: subset_names(&x.fixed, cname),
        x_phi: subset_names(&x.result, cname),
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} ({}), p = {}, phi = {} (residue {} mod {}), disc {}",
        json.scenario,
        rs.label(),
        json.p,
        phi,
        json.residue,
        json.modulus,
        json.disc
    );
    let rows = [
        ("alpha^-1(phi)", &json.alpha_preimage),
        ("beta(...) in mu(-1)", &json.beta_image),
        ("gamma^-1(...)", &json.gamma_preimage),
        ("C*^Gamma", &json.fixed),
        ("X(phi)", &json.x_phi),
    ];
    for (label, items) in rows {
        let _ = writeln!(text, "  {label:<20} = {}", braces(items));
    }
    Ok(Output::new(text, &json, EXIT_OK))
}

#[derive(Serialize)]
struct OmegaJson {
    scenario: String,
    rank: usize,
    phi: i64,
    disc: String,
    x_phi: Vec<String>,
    members: usize,
    subsets: usize,
    minimal_complements: Vec<Vec<usize>>,
    truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_members: Option<Vec<Vec<usize>>>,
}

pub fn omega_cmd(
    choice: &ScenarioChoice,
    phi: i64,
    disc: bool,
    max_print: usize,
    full: bool,
    style: Style,
) -> Result<Output> {
    let s = choice.build()?;
    let action = s.galois_selector(disc);
    let x = x_phi(&s, disc, Cocharacter(phi))?;
    let om = omega(s.rootsystem(), action, &x.result)?;
    let minimal = om.minimal_complements();
    let shown: Vec<VertexSet> = minimal.iter().copied().take(max_print).collect();
    let json = OmegaJson {
        scenario: s.name().into(),
        rank: s.rank(),
        phi,
        disc: disc_word(disc).into(),
        x_phi: subset_names(&x.result, |v| center_name(s.rootsystem(), v, style)),
        members: om.len(),
        subsets: 1 << s.rank(),
        minimal_complements: shown.iter().map(|v| vertices(*v)).collect(),
        truncated: shown.len() < minimal.len(),
        all_members: full.then(|| om.members().map(vertices).collect()),
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "Omega(phi) for {} ({}), phi = {phi}, disc {}: X(phi) = {}",
        json.scenario,
        s.rootsystem().label(),
        json.disc,
        braces(&json.x_phi)
    );
    let _ = writeln!(text, "members: {} of {}", json.members, json.subsets);
    let _ = writeln!(text, "minimal complements Delta \\ Theta ({} total):", minimal.len());
    for v in &shown {
        let _ = writeln!(text, "  {v}");
    }
    if json.truncated {
        let _ = writeln!(text, "  ... {} more (raise --max-print)", minimal.len() - shown.len());
    }
    if full {
        let _ = writeln!(text, "all members Theta:");
        for t in om.members() {
            let _ = writeln!(text, "  {t}");
        }
    }
    Ok(Output::new(text, &json, EXIT_OK))
}

/// Parses `1,7`, `{2,4}` or the empty string.
pub fn parse_vertex_set(s: &str, rank: usize) -> Result<VertexSet> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = VertexSet::EMPTY;
    for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| Error::Input(format!("`{tok}` is not a vertex number")))?;
        if v == 0 || v > rank {
            return Err(Error::Input(format!("vertex {v} out of range 1..={rank}")));
        }
        out = out.with(v);
    }
    Ok(out)
}

#[derive(Serialize)]
struct SpecialJson {
    scenario: String,
    phi: i64,
    residue: i64,
    disc: String,
    distinguished: Vec<usize>,
    x_phi: Vec<String>,
    minimal_type: Vec<usize>,
    parabolic_defined: bool,
    type_in_omega: bool,
    special: bool,
}

pub fn special(choice: &ScenarioChoice, phi: i64, disc: bool, distinguished: &str, style: Style) -> Result<Output> {
    let s = choice.build()?;
    let n = s.rank();
    let action = s.galois_selector(disc);
    let index = TitsIndex::new(parse_vertex_set(distinguished, n)?, action)?;
    let x = x_phi(&s, disc, Cocharacter(phi))?;
    let om = omega(s.rootsystem(), action, &x.result)?;
    let theta = index.minimal_type(n);
    let parabolic_defined = index.defines_parabolic(theta, n, action);
    let type_in_omega = om.contains(theta);
    let json = SpecialJson {
        scenario: s.name().into(),
        phi,
        residue: x.residue,
        disc: disc_word(disc).into(),
        distinguished: vertices(index.distinguished()),
        x_phi: subset_names(&x.result, |v| center_name(s.rootsystem(), v, style)),
        minimal_type: vertices(theta),
        parabolic_defined,
        type_in_omega,
        special: degmap_core::is_f_special(&index, &om, action),
    };
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} ({}), phi = {phi}, disc {}, distinguished {}",
        json.scenario,
        s.rootsystem().label(),
        json.disc,
        index.distinguished()
    );
    let _ = writeln!(text, "  X(phi)                           = {}", braces(&json.x_phi));
    let _ = writeln!(text, "  minimal type Delta \\ distinguished = {theta}");
    let _ = writeln!(text, "  parabolic of that type defined   : {}", yn(parabolic_defined));
    let _ = writeln!(text, "  type in Omega(phi)               : {}", yn(type_in_omega));
    let _ = writeln!(text, "phi is f-special: {}", yn(json.special));
    Ok(Output::new(text, &json, EXIT_OK))
}

#[derive(Serialize)]
struct StateRow {
    state: usize,
    #[serde(flatten)]
    record: StateRecord,
}

fn state_record(s: &Scenario, st: &FieldState) -> StateRecord {
    StateRecord {
        splitness: s.tits().context().pattern_map(&st.splitness),
        disc: disc_word(st.disc_trivial).into(),
        distinguished: st.distinguished(),
    }
}

fn describe_splitness(r: &StateRecord) -> String {
    let parts: Vec<String> = r.splitness.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(" ")
}

pub fn states(choice: &ScenarioChoice) -> Result<Output> {
    let s = choice.build()?;
    let rows: Vec<StateRow> = enumerate_states(&s)?
        .iter()
        .enumerate()
        .map(|(state, st)| StateRow { state, record: state_record(&s, st) })
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "{} ({}): {} admissible states", s.name(), s.rootsystem().label(), rows.len());
    let _ = writeln!(text, "{:<5} {:<11} {:<28} distinguished", "state", "disc", "splitness");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<5} {:<11} {:<28} {}",
            r.state,
            r.record.disc,
            describe_splitness(&r.record),
            r.record.distinguished
        );
    }
    Ok(Output::new(text, &rows, EXIT_OK))
}

fn render_report(r: &Report, style: Style, text: &mut String) {
    let label = if r.corollary == r.scenario {
        r.corollary.clone()
    } else {
        format!("{} ({} rank {})", r.corollary, r.scenario, r.rank)
    };
    let verdict = match &r.verdict {
        Verdict::Verified { statement } => format!("verified: {statement}"),
        Verdict::Refuted { counterexample: c } => {
            let at = c.phi.map(|p| format!(", phi {p}")).unwrap_or_default();
            format!("refuted: {} fails at state {}{at}", c.condition, c.state)
        }
    };
    let _ = writeln!(
        text,
        "{label}: p = {}, {} states, {} checks ({} substantive, {} vacuous), {verdict}",
        r.p,
        r.states.len(),
        r.checks.len(),
        r.vacuity.substantive,
        r.vacuity.vacuous
    );
    if let Verdict::Refuted { counterexample } = &r.verdict {
        if let Some(st) = r.states.get(counterexample.state) {
            let _ = writeln!(
                text,
                "  counterexample state: disc {}, {}, distinguished {}",
                st.disc,
                describe_splitness(st),
                st.distinguished
            );
        }
    }
    for note in &r.notes {
        let _ = writeln!(text, "  note: {note}");
    }
    if style.verbose >= 2 {
        for (i, st) in r.states.iter().enumerate() {
            let _ = writeln!(
                text,
                "  state {i}: disc {}, {}, distinguished {}",
                st.disc,
                describe_splitness(st),
                st.distinguished
            );
        }
    }
    if style.verbose >= 1 {
        for c in &r.checks {
            let _ = writeln!(
                text,
                "  check state {} phi {}: cond1 {} cond2 {}{}",
                c.state,
                c.phi,
                pass(c.cond1),
                pass(c.cond2),
                if c.vacuous { " (vacuous)" } else { "" }
            );
        }
        for c in &r.claims {
            let _ = writeln!(
                text,
                "  claim state {}: X(K) nonempty {} / all special {} -> {}",
                c.state,
                c.x_point,
                c.all_special,
                pass(c.holds)
            );
        }
        for v in &r.lemma4_violations {
            let _ = writeln!(text, "  lemma 4 violation: state {} phi {}", v.state, v.phi);
        }
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn verdict_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.verdict.is_verified()) {
        EXIT_OK
    } else {
        EXIT_REFUTED
    }
}

pub fn verify_one(corollary: &str, rank: Option<usize>, overrides: Option<&Overrides>, style: Style) -> Result<Output> {
    let cor: Corollary = corollary.parse()?;
    let mut s = cor.scenario(rank)?;
    if let Some(o) = overrides {
        s = o.apply(s).map_err(|e| Error::Input(format!("override file {e}")))?;
    }
    let report = Verifier::new(s)?.report(cor.name())?;
    let mut text = String::new();
    render_report(&report, style, &mut text);
    let code = verdict_code(std::slice::from_ref(&report));
    Ok(Output::new(text, &report, code))
}

pub fn verify_everything(style: Style) -> Result<Output> {
    let reports = verify_all()?;
    let mut text = String::new();
    for r in &reports {
        render_report(r, style, &mut text);
    }
    let code = verdict_code(&reports);
    let _ = writeln!(
        text,
        "{} of {} corollaries verified",
        reports.iter().filter(|r| r.verdict.is_verified()).count(),
        reports.len()
    );
    Ok(Output::new(text, &reports, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_sets() {
        assert_eq!(parse_vertex_set("{2,4}", 6).unwrap(), VertexSet::EMPTY.with(2).with(4));
        assert_eq!(parse_vertex_set("", 6).unwrap(), VertexSet::EMPTY);
        assert!(parse_vertex_set("7", 6).is_err());
        assert!(parse_vertex_set("a", 6).is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Input("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Capability("x".into())), EXIT_CAPABILITY);
    }
}
