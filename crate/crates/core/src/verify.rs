//! Verification reports: named checks with pass / vacuous / inconclusive /
//! fail outcomes and human-readable witnesses.
//!
//! Inconclusive is a first-class outcome: several properties are defined
//! over the infinite group and a ball-restricted sweep can only certify
//! them up to the configured radius.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::automata::{brink_howlett, equivalent, minimize, BhAutomaton, Dfa};
use crate::conetype::{
    cone_state, gate, gates, gates_match_minimal_automaton, verify_cone_theorems,
    verify_gate_monotone, verify_stop_rule,
};
use crate::enumerate::Ball;
use crate::group::{CoxeterGroup, Wall};
use crate::mat::Mat;
use crate::oracle::bipodality::verify_bipodality;
use crate::oracle::OracleBall;
use crate::roots::SmallRoots;
use crate::shi::{
    enumerate_m, is_low, shi_minimum, signature, signature_state, verify_monotone, verify_shadow,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The property held on every instance checked.
    Pass,
    /// No instance to check (hypothesis never satisfied in the ball).
    Vacuous,
    /// The sweep could not decide at this radius.
    Inconclusive,
    /// A counterexample was found.
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Instance counts, and witnesses on failure.
    pub details: String,
}

impl Check {
    pub fn new(name: &str, status: Status, details: impl Into<String>) -> Check {
        Check { name: name.to_string(), status, details: details.into() }
    }

    pub fn pass(name: &str, details: impl Into<String>) -> Check {
        Check::new(name, Status::Pass, details)
    }

    pub fn from_failures(name: &str, instances: usize, failures: Vec<String>) -> Check {
        if instances == 0 {
            Check::new(name, Status::Vacuous, "no instances")
        } else if failures.is_empty() {
            Check::new(name, Status::Pass, format!("{instances} instances"))
        } else {
            let shown = failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
            Check::new(
                name,
                Status::Fail,
                format!("{}/{} instances failed: {}", failures.len(), instances, shown),
            )
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub system: String,
    pub radius: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    /// Side observations that are not scored: skipped instances,
    /// visibility limits of the ball, and similar.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(system: &str, radius: u32, suite: &str) -> Report {
        Report {
            system: system.to_string(),
            radius,
            suite: suite.to_string(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: Vec<Check>) {
        self.checks.extend(checks);
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn any_inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Inconclusive)
    }

    pub fn all_green(&self) -> bool {
        !self.any_failed() && !self.any_inconclusive()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// One line per check, for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Vacuous => "VACUOUS",
                Status::Inconclusive => "INCONCLUSIVE",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag:13} {:40} {}\n", c.name, c.details));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Knobs shared by every suite.
pub struct SuiteConfig {
    pub radius: u32,
    pub max_states: usize,
    pub max_ball: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { radius: 8, max_states: 100_000, max_ball: 1 << 22 }
    }
}

pub const SUITE_NAMES: &[&str] = &["automata", "shi", "shadow", "cone", "bipodality", "all"];

/// Run one named suite (or `all`) against a system, cross-checking the
/// root/automaton machinery against the brute-force oracle wherever the
/// two can meet.
pub fn run_suite(w: &CoxeterGroup, suite: &str, cfg: &SuiteConfig) -> Result<Report, String> {
    if !SUITE_NAMES.contains(&suite) {
        return Err(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITE_NAMES.join(", ")
        ));
    }
    let ball = Ball::new(w, cfg.radius);
    let oracle = OracleBall::build(w, cfg.radius, cfg.max_ball)?;
    let sr = SmallRoots::compute(w, cfg.max_states)?;
    let bh = brink_howlett(&sr, w.rank(), cfg.max_states)?;
    let (min_dfa, _) = minimize(&bh.dfa);

    let mut report = Report::new(&w.system().to_string(), cfg.radius, suite);
    if suite == "automata" || suite == "all" {
        report.extend(automata_checks(w, &ball, &oracle, &bh, &min_dfa));
    }
    if suite == "shi" || suite == "all" {
        report.extend(shi_checks(w, &ball, &oracle, &sr, &bh));
    }
    if suite == "shadow" || suite == "all" {
        report.extend(shadow_checks(w, &ball, &bh, &min_dfa));
    }
    if suite == "cone" || suite == "all" {
        report.extend(cone_checks(w, &ball, &oracle, &min_dfa, cfg.radius));
    }
    if suite == "bipodality" || suite == "all" {
        let (check, skips) = verify_bipodality(&oracle);
        report.push(check);
        report.notes.extend(skips);
    }
    Ok(report)
}

/// Oracle id of a main-ball element; both balls have the same radius, so
/// the lookup is total.
fn oracle_id(ball: &Ball<'_>, oracle: &OracleBall<'_>, i: u32) -> u32 {
    oracle
        .id_of_mat(ball.elt(i).mat())
        .expect("main and oracle balls enumerate the same elements")
}

fn automata_checks(
    w: &CoxeterGroup,
    ball: &Ball<'_>,
    oracle: &OracleBall<'_>,
    bh: &BhAutomaton,
    min_dfa: &Dfa,
) -> Vec<Check> {
    let mut out = Vec::new();

    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let oid = oracle_id(ball, oracle, i);
        if ball.length_of(i) != oracle.depth_of(oid) {
            failures.push(format!(
                "{}: length {} but oracle depth {}",
                w.word_string(ball.elt(i)),
                ball.length_of(i),
                oracle.depth_of(oid)
            ));
        }
    }
    out.push(Check::from_failures("lengths match oracle depths", ball.len(), failures));

    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let oid = oracle_id(ball, oracle, i);
        let main: HashSet<Mat> = ball
            .inversion_ids(i)
            .iter()
            .map(|&wid| {
                let wall = Wall::new(ball.wall_root(wid).to_vec());
                w.reflection(&wall).mat().clone()
            })
            .collect();
        let orc: HashSet<Mat> =
            oracle.sep_ids(oid).iter().map(|&wid| oracle.wall_mat(wid).clone()).collect();
        if main != orc {
            failures.push(format!(
                "{}: {} inversion walls vs {} oracle separators",
                w.word_string(ball.elt(i)),
                main.len(),
                orc.len()
            ));
        }
    }
    out.push(Check::from_failures(
        "inversion walls match oracle separators",
        ball.len(),
        failures,
    ));

    // Every word over the alphabet, accepted iff the oracle walk calls
    // it reduced.  The word length is capped so the sweep stays small.
    let rank = w.rank();
    let mut maxlen = ball.radius().min(8) as usize;
    while rank.pow(maxlen as u32) > 400_000 {
        maxlen -= 1;
    }
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut failures = Vec::new();
    let mut total = 0usize;
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for word in &words {
            for s in 0..rank {
                let mut ext = word.clone();
                ext.push(s as u8);
                next.push(ext);
            }
        }
        for word in &next {
            total += 1;
            let main = bh.dfa.accepts(word);
            let orc = oracle.oracle_reduced(word).expect("short words stay inside the ball");
            if main != orc {
                let shown: Vec<String> =
                    word.iter().map(|&a| w.system().generator_label(a as usize)).collect();
                failures.push(format!(
                    "{}: automaton {} oracle {}",
                    shown.join("."),
                    if main { "accepts" } else { "rejects" },
                    if orc { "reduced" } else { "unreduced" }
                ));
            }
        }
        words = next;
    }
    out.push(Check::from_failures("automaton accepts exactly the reduced words", total, failures));

    let n = ball.radius() as usize;
    let main_growth = bh.dfa.word_growth(n);
    let orc_growth = oracle.reduced_word_counts(ball.radius());
    out.push(if main_growth == orc_growth {
        Check::pass(
            "growth series matches oracle",
            format!(
                "counts by length: {}",
                main_growth.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            ),
        )
    } else {
        Check::new(
            "growth series matches oracle",
            Status::Fail,
            format!("automaton {main_growth:?} vs oracle {orc_growth:?}"),
        )
    });

    out.push(if equivalent(&bh.dfa, min_dfa) {
        Check::pass(
            "minimization preserves the language",
            format!("{} states down to {}", bh.dfa.num_states(), min_dfa.num_states()),
        )
    } else {
        Check::new(
            "minimization preserves the language",
            Status::Fail,
            "minimized automaton accepts a different language",
        )
    });

    out
}

fn shi_checks(
    w: &CoxeterGroup,
    ball: &Ball<'_>,
    oracle: &OracleBall<'_>,
    sr: &SmallRoots,
    bh: &BhAutomaton,
) -> Vec<Check> {
    let mut out = Vec::new();

    // Small roots, as reflection matrices, against the oracle's walls
    // that nothing separates from the identity.
    let main_walls: Vec<Mat> =
        sr.walls().iter().map(|wall| w.reflection(wall).mat().clone()).collect();
    let deepest = (0..sr.len() as u32).map(|a| sr.depth_of(a)).max().unwrap_or(0);
    out.push(if deepest > ball.radius() {
        Check::new(
            "small roots match oracle walls",
            Status::Inconclusive,
            format!(
                "deepest small root at depth {deepest} exceeds radius {}",
                ball.radius()
            ),
        )
    } else {
        let orc: HashSet<Mat> = oracle
            .oracle_small_walls(ball.radius())
            .into_iter()
            .map(|wid| oracle.wall_mat(wid).clone())
            .collect();
        let main: HashSet<Mat> = main_walls.iter().cloned().collect();
        if main == orc {
            Check::pass("small roots match oracle walls", format!("{} roots", main.len()))
        } else {
            Check::new(
                "small roots match oracle walls",
                Status::Fail,
                format!("{} main roots vs {} oracle walls", main.len(), orc.len()),
            )
        }
    });

    // Per-element signatures, as sets of reflection matrices.
    let orc_small: HashMap<Mat, u32> = oracle
        .oracle_small_walls(ball.radius())
        .into_iter()
        .map(|wid| (oracle.wall_mat(wid).clone(), wid))
        .collect();
    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let g = ball.elt(i);
        let oid = oracle_id(ball, oracle, i);
        let main: HashSet<&Mat> =
            signature(w, sr, g).iter().map(|&a| &main_walls[a as usize]).collect();
        let orc: HashSet<&Mat> = oracle
            .sep_ids(oid)
            .iter()
            .map(|&wid| oracle.wall_mat(wid))
            .filter(|m| orc_small.contains_key(*m))
            .collect();
        if main != orc {
            failures.push(format!("{}: signature differs from oracle", w.word_string(g)));
        }
    }
    out.push(Check::from_failures("signatures match oracle", ball.len(), failures));

    // Fibers of the signature map and their minima.
    let mut fibers: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    for i in 0..ball.len() as u32 {
        fibers.entry(signature(w, sr, ball.elt(i))).or_default().push(i);
    }
    let mut fiber_min: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut failures = Vec::new();
    for (sig, members) in &fibers {
        let best = members.iter().map(|&i| ball.length_of(i)).min().unwrap();
        let mins: Vec<u32> =
            members.iter().copied().filter(|&i| ball.length_of(i) == best).collect();
        if mins.len() != 1 {
            failures.push(format!(
                "signature {sig:?} has {} elements of minimal length {best}",
                mins.len()
            ));
            continue;
        }
        let m = mins[0];
        fiber_min.insert(sig.clone(), m);
        for &i in members {
            if !ball.weak_leq_ids(m, i) {
                failures.push(format!(
                    "{} is not below {} in its part",
                    w.word_string(ball.elt(m)),
                    w.word_string(ball.elt(i))
                ));
            }
        }
    }
    out.push(Check::from_failures("each part has a smallest element", fibers.len(), failures));

    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let g = ball.elt(i);
        let m = shi_minimum(w, sr, g);
        let expect = fiber_min.get(&signature(w, sr, g));
        if expect != ball.id_of(&m).as_ref() {
            failures.push(format!("greedy descent from {} misses", w.word_string(g)));
        }
    }
    out.push(Check::from_failures("greedy descent reaches the smallest element", ball.len(), failures));

    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let g = ball.elt(i);
        let state = signature_state(w, bh, g);
        if bh.state_sets[state as usize] != signature(w, sr, g) {
            failures.push(format!("{}: state set differs", w.word_string(g)));
        }
    }
    out.push(Check::from_failures("automaton states carry the signatures", ball.len(), failures));

    let mut failures = Vec::new();
    for (sig, members) in &fibers {
        let oracle_members: Vec<u32> =
            members.iter().map(|&i| oracle_id(ball, oracle, i)).collect();
        match oracle.oracle_part_minimum(&oracle_members) {
            Ok(oid) => {
                let m = fiber_min[sig];
                if oracle.mat_of(oid) != ball.elt(m).mat() {
                    failures.push(format!("oracle minimum of {sig:?} differs"));
                }
            }
            Err((a, b)) => failures.push(format!(
                "oracle found incomparable minima in {sig:?}: lengths {} and {}",
                oracle.depth_of(a),
                oracle.depth_of(b)
            )),
        }
    }
    out.push(Check::from_failures("smallest elements match oracle minima", fibers.len(), failures));

    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let g = ball.elt(i);
        let fixed = shi_minimum(w, sr, g).mat() == g.mat();
        if is_low(w, sr, g) != fixed {
            failures.push(format!("{}: low-ness and greedy fixpoint disagree", w.word_string(g)));
        }
    }
    out.push(Check::from_failures("low elements are the greedy fixpoints", ball.len(), failures));

    out.push(verify_monotone(ball, sr));
    out
}

fn shadow_checks(
    w: &CoxeterGroup,
    ball: &Ball<'_>,
    bh: &BhAutomaton,
    min_dfa: &Dfa,
) -> Vec<Check> {
    let mut out = Vec::new();
    let m_set = enumerate_m(w, bh);
    let gate_set = gates(w, min_dfa);
    out.extend(verify_shadow(ball, "smallest elements", &m_set));
    out.extend(verify_shadow(ball, "gates", &gate_set));

    let m_mats: HashSet<&Mat> = m_set.iter().map(|g| g.mat()).collect();
    let mut failures = Vec::new();
    for g in &gate_set {
        if !m_mats.contains(g.mat()) {
            failures.push(format!("gate {} is not a smallest element", w.word_string(g)));
        }
    }
    out.push(Check::from_failures("gates are smallest elements", gate_set.len(), failures));
    out
}

fn cone_checks(
    w: &CoxeterGroup,
    ball: &Ball<'_>,
    oracle: &OracleBall<'_>,
    min_dfa: &Dfa,
    radius: u32,
) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(verify_cone_theorems(ball, min_dfa));
    out.push(gates_match_minimal_automaton(w, min_dfa));
    out.push(verify_gate_monotone(ball, min_dfa));
    out.push(verify_stop_rule(ball, min_dfa, radius.saturating_sub(2)));

    let mut failures = Vec::new();
    for i in 0..ball.len() as u32 {
        let g = ball.elt(i);
        let h = gate(w, min_dfa, g);
        if gate(w, min_dfa, &h).mat() != h.mat() {
            failures.push(format!("gate of {} is not idempotent", w.word_string(g)));
        }
    }
    out.push(Check::from_failures("gate map is idempotent", ball.len(), failures));

    // Cone-type partition against raw length-additivity profiles.  The
    // oracle partition can only get coarser than the truth when the
    // probe is too small, never finer, so a main state split across
    // oracle classes is a real error while the reverse is inconclusive.
    let margin = (radius / 2).max(2);
    match oracle.oracle_cone_partition(margin) {
        Err(e) => out.push(Check::new(
            "cone types match oracle partition",
            Status::Inconclusive,
            e,
        )),
        Ok((domain, classes)) => {
            let mut class_to_states: HashMap<u32, HashSet<u32>> = HashMap::new();
            let mut state_to_classes: HashMap<u32, HashSet<u32>> = HashMap::new();
            let mut class_members: HashMap<u32, Vec<u32>> = HashMap::new();
            for (k, &x) in domain.iter().enumerate() {
                let g = w.from_matrix(oracle.mat_of(x), oracle.depth_of(x));
                let q = cone_state(w, min_dfa, &g);
                class_to_states.entry(classes[k]).or_default().insert(q);
                state_to_classes.entry(q).or_default().insert(classes[k]);
                class_members.entry(classes[k]).or_default().push(x);
            }
            let split: Vec<&u32> =
                state_to_classes.iter().filter(|(_, v)| v.len() > 1).map(|(q, _)| q).collect();
            let coarse = class_to_states.values().filter(|v| v.len() > 1).count();
            out.push(if !split.is_empty() {
                Check::new(
                    "cone types match oracle partition",
                    Status::Fail,
                    format!(
                        "{} automaton states span several additivity classes",
                        split.len()
                    ),
                )
            } else if coarse > 0 {
                Check::new(
                    "cone types match oracle partition",
                    Status::Inconclusive,
                    format!("{coarse} oracle classes unresolved at probe margin {margin}"),
                )
            } else {
                Check::pass(
                    "cone types match oracle partition",
                    format!(
                        "{} classes over {} elements, probe margin {margin}",
                        class_to_states.len(),
                        domain.len()
                    ),
                )
            });

            let mut failures = Vec::new();
            let mut instances = 0usize;
            if split.is_empty() && coarse == 0 {
                for members in class_members.values() {
                    instances += 1;
                    match oracle.oracle_part_minimum(members) {
                        Ok(oid) => {
                            let any = w.from_matrix(
                                oracle.mat_of(members[0]),
                                oracle.depth_of(members[0]),
                            );
                            if gate(w, min_dfa, &any).mat() != oracle.mat_of(oid) {
                                failures.push(format!(
                                    "gate of {} differs from oracle minimum",
                                    w.word_string(&any)
                                ));
                            }
                        }
                        Err((a, b)) => failures.push(format!(
                            "incomparable minima of lengths {} and {}",
                            oracle.depth_of(a),
                            oracle.depth_of(b)
                        )),
                    }
                }
            }
            out.push(Check::from_failures(
                "gates match oracle class minima",
                instances,
                failures,
            ));
        }
    }
    out
}
