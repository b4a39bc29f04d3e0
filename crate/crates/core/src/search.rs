//! Bounded proof search over a finite instantiation universe.
//!
//! Leaves are the axiom instances obtained by filling every metavariable of
//! every whitelisted schema from the universe, plus the supplied hypotheses.
//! Forward saturation under modus ponens (and optionally modus tollens) then
//! gives the finite set of derivable formulas together with the height of
//! their shortest derivation tree. Proofs of bounded length are found by
//! iterative deepening over a backward search restricted to that set, so an
//! absent result means no proof of that length exists over the universe.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::checker::check_proof_with;
use crate::formula::{expand_levels, Formula, Term};
use crate::proof::{Justification, MetaValue, ProofScript};
use crate::registry::Registry;
use crate::schema::{instantiate_with, side_condition, SchemaId, SchemaInstance, SchemaSettings};

/// How the depth bound is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthMeasure {
    /// Number of proof lines, hypotheses included.
    Lines,
    /// Length of the longest premise chain, counting the conclusion.
    Height,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_depth: usize,
    /// Schemata to instantiate. `None` means every propositional schema of
    /// the profile.
    pub schema_whitelist: Option<BTreeSet<SchemaId>>,
    /// Candidate fillers for formula metavariables. When empty, the
    /// subformulas of the goal and the hypotheses are used.
    pub instantiation_universe: Vec<Formula>,
    /// Candidate terms for term metavariables. When empty, the terms and
    /// free variables of the goal and hypotheses are used.
    pub term_universe: Vec<Term>,
    /// Names tried for bound-variable metavariables. When empty, `x` and `y`.
    pub variable_universe: Vec<String>,
    pub hypotheses: Vec<Formula>,
    pub use_mt: bool,
    /// Largest level parameter tried for leveled schemata.
    pub level_bound: u32,
    pub time_budget: Duration,
    pub measure: DepthMeasure,
    pub settings: SchemaSettings,
}

impl SearchConfig {
    pub fn new(max_depth: usize) -> Self {
        SearchConfig {
            max_depth,
            schema_whitelist: None,
            instantiation_universe: Vec::new(),
            term_universe: Vec::new(),
            variable_universe: Vec::new(),
            hypotheses: Vec::new(),
            use_mt: true,
            level_bound: 1,
            time_budget: Duration::from_secs(30),
            measure: DepthMeasure::Lines,
            settings: SchemaSettings::default(),
        }
    }

    pub fn whitelist(mut self, ids: impl IntoIterator<Item = SchemaId>) -> Self {
        self.schema_whitelist = Some(ids.into_iter().collect());
        self
    }

    pub fn universe(mut self, fs: impl IntoIterator<Item = Formula>) -> Self {
        self.instantiation_universe = fs.into_iter().collect();
        self
    }

    pub fn hypothesis(mut self, f: Formula) -> Self {
        self.hypotheses.push(f);
        self
    }

    pub fn measure(mut self, m: DepthMeasure) -> Self {
        self.measure = m;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("time budget of {0:?} exhausted before the search space was covered")]
    BudgetExhausted(Duration),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("internal error: the found proof was rejected on re-check: {0}")]
    SelfCheckFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Just {
    Axiom(SchemaInstance),
    Hyp,
    Mp(Formula, Formula),
    Mt(Formula, Formula),
}

impl Just {
    fn premises(&self) -> Vec<&Formula> {
        match self {
            Just::Mp(a, b) | Just::Mt(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }
}

fn is_propositional_schema(s: SchemaId) -> bool {
    use SchemaId::*;
    matches!(
        s,
        Lp1 | Lp2
            | Lp3
            | Lp4
            | Lp5
            | Lp6
            | Lp7
            | Lp8
            | Lp9
            | Lp10
            | Lp11
            | Lp12
            | Lp13
            | Lp14
            | Lp15
            | Lp1Excluded
            | Lp1Explosion
            | Lp1ExcludedFourth
    )
}

fn subformulas(f: &Formula, out: &mut BTreeSet<Formula>) {
    f.visit(&mut |g| {
        out.insert(g.clone());
    });
}

/// Every way of picking one value per slot.
fn product<T: Clone>(slots: usize, values: &[T]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..slots {
        acc = acc.into_iter().flat_map(|p| values.iter().map(move |v| [p.clone(), vec![v.clone()]].concat())).collect();
    }
    acc
}

struct Space {
    leaves: BTreeMap<Formula, Just>,
    /// Derivable formulas with the height of their shortest derivation and
    /// the justification that achieves it.
    height: HashMap<Formula, (usize, Just)>,
    /// For each derivable consequent, the derivable antecedents `A` with
    /// `A → consequent` derivable.
    by_consequent: HashMap<Formula, BTreeSet<Formula>>,
    use_mt: bool,
}

fn leaves(goal: &Formula, cfg: &SearchConfig, r: &Registry) -> BTreeMap<Formula, Just> {
    let mut universe: BTreeSet<Formula> = cfg.instantiation_universe.iter().map(expand_levels).collect();
    if universe.is_empty() {
        subformulas(&expand_levels(goal), &mut universe);
    }
    for h in &cfg.hypotheses {
        subformulas(&expand_levels(h), &mut universe);
    }
    let universe: Vec<Formula> = universe.into_iter().collect();

    let mut terms: BTreeSet<Term> = cfg.term_universe.iter().cloned().collect();
    if terms.is_empty() {
        for f in std::iter::once(goal).chain(cfg.hypotheses.iter()) {
            f.visit(&mut |g| terms.extend(g.terms().into_iter().cloned()));
            terms.extend(f.free_vars().into_iter().map(Term::Var));
        }
    }
    let terms: Vec<Term> = terms.into_iter().collect();
    let vars: Vec<String> =
        if cfg.variable_universe.is_empty() { vec!["x".into(), "y".into()] } else { cfg.variable_universe.clone() };

    let schemas: Vec<SchemaId> = cfg
        .settings
        .profile
        .axioms()
        .filter(|s| match &cfg.schema_whitelist {
            Some(w) => w.contains(s),
            None => is_propositional_schema(*s),
        })
        .collect();

    let mut out = BTreeMap::new();
    for s in schemas {
        let m = s.metavariables();
        let levels: Vec<u32> = if m.level { (0..=cfg.level_bound).collect() } else { vec![0] };
        for fs in product(m.formulas.len(), &universe) {
            for vs in product(m.bound_vars.len(), &vars) {
                for ts in product(m.terms.len(), &terms) {
                    for &n in &levels {
                        let mut inst = SchemaInstance::new(s);
                        for (k, f) in m.formulas.iter().zip(&fs) {
                            inst = inst.formula(k, f.clone());
                        }
                        for (k, v) in m.bound_vars.iter().zip(&vs) {
                            inst = inst.term(k, Term::var(v.clone()));
                        }
                        for (k, t) in m.terms.iter().zip(&ts) {
                            inst = inst.term(k, t.clone());
                        }
                        if m.level {
                            inst = inst.level(n);
                        }
                        let Ok(f) = instantiate_with(&inst, &cfg.settings) else { continue };
                        if side_condition(&inst, r, &cfg.settings).is_err() {
                            continue;
                        }
                        out.entry(f).or_insert(Just::Axiom(inst));
                    }
                }
            }
        }
    }
    for h in &cfg.hypotheses {
        out.entry(expand_levels(h)).or_insert(Just::Hyp);
    }
    out
}

impl Space {
    fn build(leaves: BTreeMap<Formula, Just>, use_mt: bool) -> Space {
        let mut height: HashMap<Formula, (usize, Just)> =
            leaves.iter().map(|(f, j)| (f.clone(), (1, j.clone()))).collect();
        let mut round = 1;
        loop {
            round += 1;
            let known: Vec<Formula> = {
                let mut v: Vec<Formula> = height.keys().cloned().collect();
                v.sort();
                v
            };
            let mut fresh: BTreeMap<Formula, Just> = BTreeMap::new();
            for f in &known {
                if let Formula::Imp(a, b) = f {
                    if height.contains_key(a.as_ref()) && !height.contains_key(b.as_ref()) {
                        fresh.entry(b.as_ref().clone()).or_insert(Just::Mp(a.as_ref().clone(), f.clone()));
                    }
                    if use_mt {
                        let nb = Formula::Not(b.clone());
                        let na = Formula::Not(a.clone());
                        if height.contains_key(&nb) && !height.contains_key(&na) {
                            fresh.entry(na).or_insert(Just::Mt(f.clone(), nb));
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            for (f, j) in fresh {
                height.insert(f, (round, j));
            }
        }
        let mut by_consequent: HashMap<Formula, BTreeSet<Formula>> = HashMap::new();
        for f in height.keys() {
            if let Formula::Imp(a, b) = f {
                if height.contains_key(a.as_ref()) {
                    by_consequent.entry(b.as_ref().clone()).or_default().insert(a.as_ref().clone());
                }
            }
        }
        Space { leaves, height, by_consequent, use_mt }
    }

    fn h(&self, f: &Formula) -> usize {
        self.height.get(f).map_or(usize::MAX, |(h, _)| *h)
    }

    /// Candidate justifications for `g`, leaves first.
    fn options(&self, g: &Formula) -> Vec<Just> {
        let mut out = Vec::new();
        if let Some(j) = self.leaves.get(g) {
            out.push(j.clone());
        }
        if let Some(ants) = self.by_consequent.get(g) {
            for a in ants {
                if a != g {
                    out.push(Just::Mp(a.clone(), Formula::imp(a.clone(), g.clone())));
                }
            }
        }
        if self.use_mt {
            if let Formula::Not(a) = g {
                let mut mts: Vec<Just> = self
                    .height
                    .keys()
                    .filter_map(|f| match f {
                        Formula::Imp(x, y) if x == a => {
                            let ny = Formula::Not(y.clone());
                            (self.height.contains_key(&ny) && &ny != g).then(|| Just::Mt(f.clone(), ny))
                        }
                        _ => None,
                    })
                    .collect();
                mts.sort_by(|p, q| p.premises().cmp(&q.premises()));
                out.extend(mts);
            }
        }
        out
    }
}

struct Dfs<'a> {
    space: &'a Space,
    limit: usize,
    started: Instant,
    budget: Duration,
    steps: u64,
}

impl Dfs<'_> {
    fn run(
        &mut self,
        open: &mut Vec<Formula>,
        committed: &mut Vec<(Formula, Just)>,
    ) -> Result<Option<Vec<(Formula, Just)>>, SearchError> {
        self.steps += 1;
        if self.steps.is_multiple_of(4096) && self.started.elapsed() > self.budget {
            return Err(SearchError::BudgetExhausted(self.budget));
        }
        let Some(g) = open.pop() else {
            return Ok(acyclic(committed).then(|| committed.clone()));
        };
        for just in self.space.options(&g) {
            let mut added = Vec::new();
            for p in just.premises() {
                if *p != g && !open.contains(p) && !committed.iter().any(|(c, _)| c == p) && !added.contains(p) {
                    added.push(p.clone());
                }
            }
            let lines = committed.len() + 1 + open.len() + added.len();
            let tallest = open.iter().chain(&added).map(|f| self.space.h(f)).max().unwrap_or(0);
            if lines > self.limit || tallest > self.limit {
                continue;
            }
            let depth = open.len();
            open.extend(added.iter().cloned());
            committed.push((g.clone(), just));
            if let Some(found) = self.run(open, committed)? {
                return Ok(Some(found));
            }
            committed.pop();
            open.truncate(depth);
        }
        open.push(g);
        Ok(None)
    }
}

fn acyclic(lines: &[(Formula, Just)]) -> bool {
    order(lines).is_some()
}

/// Premises-first ordering of the lines, or `None` on a cycle.
fn order(lines: &[(Formula, Just)]) -> Option<Vec<usize>> {
    let index: HashMap<&Formula, usize> = lines.iter().enumerate().map(|(i, (f, _))| (f, i)).collect();
    let mut state = vec![0u8; lines.len()];
    let mut out = Vec::new();
    fn visit(
        i: usize,
        lines: &[(Formula, Just)],
        index: &HashMap<&Formula, usize>,
        state: &mut [u8],
        out: &mut Vec<usize>,
    ) -> bool {
        match state[i] {
            1 => return false,
            2 => return true,
            _ => {}
        }
        state[i] = 1;
        for p in lines[i].1.premises() {
            if !visit(index[p], lines, index, state, out) {
                return false;
            }
        }
        state[i] = 2;
        out.push(i);
        true
    }
    // The goal is the first committed line; everything else hangs off it.
    for i in 0..lines.len() {
        if !visit(i, lines, &index, &mut state, &mut out) {
            return None;
        }
    }
    Some(out)
}

fn axiom_justification(inst: &SchemaInstance) -> Justification {
    let bindings = inst
        .schema
        .metavariables()
        .terms
        .iter()
        .filter_map(|k| inst.term_subst.get(*k).map(|t| (k.to_string(), MetaValue::Term(t.clone()))))
        .collect();
    let level = if inst.schema.has_level() { inst.n() } else { None };
    Justification::Axiom { schema: inst.schema, level, bindings }
}

fn to_script(lines: &[(Formula, Just)]) -> ProofScript {
    let ord = order(lines).expect("acyclic");
    let mut script = ProofScript::default();
    let mut ids: HashMap<&Formula, String> = HashMap::new();
    for i in ord {
        let (f, j) = &lines[i];
        let just = match j {
            Just::Axiom(inst) => axiom_justification(inst),
            Just::Hyp => Justification::Hypothesis,
            Just::Mp(a, b) => Justification::Mp(ids[a].clone(), ids[b].clone()),
            Just::Mt(a, b) => Justification::Mt(ids[a].clone(), ids[b].clone()),
        };
        let id = script.push_next(f.clone(), just);
        ids.insert(f, id);
    }
    let mut consts: BTreeSet<String> = BTreeSet::new();
    for l in &script.lines {
        consts.extend(l.formula.constants());
    }
    script.constants = consts.into_iter().filter(|c| !c.starts_with(|ch: char| ch.is_ascii_uppercase())).collect();
    script
}

/// Collect the height-minimal derivation of `goal` recorded by saturation.
fn shortest_tree(space: &Space, goal: &Formula) -> Vec<(Formula, Just)> {
    let mut out: Vec<(Formula, Just)> = Vec::new();
    let mut stack = vec![goal.clone()];
    while let Some(f) = stack.pop() {
        if out.iter().any(|(g, _)| *g == f) {
            continue;
        }
        let (_, j) = space.height[&f].clone();
        stack.extend(j.premises().into_iter().cloned());
        out.push((f, j));
    }
    out
}

/// Search for a proof of `goal` within `cfg.max_depth`.
///
/// Returns `Ok(None)` when no proof exists within the bounds, and an error
/// when the time budget runs out first. Every returned script has been
/// re-checked by the checker.
pub fn search(goal: &Formula, cfg: &SearchConfig, r: &Registry) -> Result<Option<ProofScript>, SearchError> {
    if cfg.max_depth == 0 {
        return Err(SearchError::InvalidConfig("max_depth must be at least 1".into()));
    }
    let started = Instant::now();
    let goal = expand_levels(goal);
    let space = Space::build(leaves(&goal, cfg, r), cfg.use_mt);
    if started.elapsed() > cfg.time_budget {
        return Err(SearchError::BudgetExhausted(cfg.time_budget));
    }
    let lines = match cfg.measure {
        DepthMeasure::Height => {
            if space.h(&goal) > cfg.max_depth {
                return Ok(None);
            }
            shortest_tree(&space, &goal)
        }
        DepthMeasure::Lines => {
            if !space.height.contains_key(&goal) {
                return Ok(None);
            }
            let mut found = None;
            for limit in space.h(&goal)..=cfg.max_depth {
                let mut dfs = Dfs { space: &space, limit, started, budget: cfg.time_budget, steps: 0 };
                if let Some(lines) = dfs.run(&mut vec![goal.clone()], &mut Vec::new())? {
                    found = Some(lines);
                    break;
                }
            }
            match found {
                Some(l) => l,
                None => return Ok(None),
            }
        }
    };
    let script = to_script(&lines);
    let report = check_proof_with(&script, r, &cfg.settings);
    if !report.accepted() {
        return Err(SearchError::SelfCheckFailed(report.summary()));
    }
    Ok(Some(script))
}
