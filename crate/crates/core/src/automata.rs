//! Deterministic automata over the generator alphabet.
//!
//! Both automata built here recognise the language of reduced words: the
//! Brink–Howlett automaton, whose states are the sets of small roots
//! inverted so far, and its minimization.  Every state is accepting, so a
//! word is rejected exactly by falling off the transition table; the
//! implicit dead state is the single rejecting state.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::roots::{ReflectEntry, SmallRoots};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Dfa {
    /// Alphabet size (= rank of the system).
    pub letters: usize,
    pub start: u32,
    /// delta[state][letter]; `None` is the dead transition.
    pub delta: Vec<Vec<Option<u32>>>,
    /// Human-readable state payloads (small-root subsets or class names).
    pub labels: Vec<String>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn step(&self, state: u32, letter: usize) -> Option<u32> {
        self.delta[state as usize][letter]
    }

    /// Run a word from the start state; `None` means rejected.
    pub fn run(&self, word: &[u8]) -> Option<u32> {
        let mut q = self.start;
        for &s in word {
            q = self.step(q, s as usize)?;
        }
        Some(q)
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        self.run(word).is_some()
    }

    /// All accepted words of length ≤ maxlen, in lexicographic order per
    /// length-extension (depth-first, letters ascending).
    pub fn words_upto(&self, maxlen: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut stack = vec![(self.start, Vec::new())];
        while let Some((q, word)) = stack.pop() {
            out.push(word.clone());
            if word.len() == maxlen {
                continue;
            }
            // Push descending so ascending letters pop first.
            for s in (0..self.letters).rev() {
                if let Some(t) = self.step(q, s) {
                    let mut w = word.clone();
                    w.push(s as u8);
                    stack.push((t, w));
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of accepted words of each length 0 ..= nmax, exactly.
    pub fn word_growth(&self, nmax: usize) -> Vec<BigUint> {
        let mut counts = Vec::with_capacity(nmax + 1);
        let mut v = vec![BigUint::zero(); self.num_states()];
        v[self.start as usize] = BigUint::one();
        counts.push(v.iter().sum());
        for _ in 1..=nmax {
            let mut next = vec![BigUint::zero(); self.num_states()];
            for (q, row) in self.delta.iter().enumerate() {
                if v[q].is_zero() {
                    continue;
                }
                for t in row.iter().flatten() {
                    next[*t as usize] += &v[q];
                }
            }
            v = next;
            counts.push(v.iter().sum());
        }
        counts
    }

    /// Deterministic DOT rendering; `gen_names` label the edges.
    pub fn to_dot(&self, gen_names: &[String]) -> String {
        let mut out = String::from("digraph reduced_words {\n  rankdir=LR;\n");
        out.push_str("  start [shape=point];\n");
        for (q, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("  q{q} [shape=circle, label=\"{label}\"];\n"));
        }
        out.push_str(&format!("  start -> q{};\n", self.start));
        for (q, row) in self.delta.iter().enumerate() {
            for (s, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    out.push_str(&format!("  q{q} -> q{t} [label=\"{}\"];\n", gen_names[s]));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automaton serialization")
    }

    pub fn from_json(text: &str) -> Result<Dfa, String> {
        let dfa: Dfa = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if dfa.labels.len() != dfa.delta.len() {
            return Err("label count does not match state count".into());
        }
        if dfa.start as usize >= dfa.delta.len() {
            return Err("start state out of range".into());
        }
        for row in &dfa.delta {
            if row.len() != dfa.letters {
                return Err("transition row length does not match alphabet".into());
            }
            for t in row.iter().flatten() {
                if *t as usize >= dfa.delta.len() {
                    return Err("transition target out of range".into());
                }
            }
        }
        Ok(dfa)
    }
}

/// The Brink–Howlett automaton together with its state payloads.
pub struct BhAutomaton {
    pub dfa: Dfa,
    /// Sorted small-root indices per state; state 0 is ∅.
    pub state_sets: Vec<Vec<u32>>,
}

/// Builds the Brink–Howlett automaton: states are the realised sets of
/// small roots; from state A the letter s is allowed iff α_s ∉ A and leads
/// to {α_s} ∪ {s·γ : γ ∈ A, s·γ small}.
pub fn brink_howlett(sr: &SmallRoots, rank: usize, max_states: usize) -> Result<BhAutomaton, String> {
    let simple_ids: Vec<u32> = (0..rank)
        .map(|s| {
            (0..sr.len() as u32)
                .find(|&a| matches!(sr.entry(a, s), ReflectEntry::NegativeSimple))
                .expect("simple roots are small")
        })
        .collect();

    let mut sets: Vec<Vec<u32>> = vec![Vec::new()];
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    index.insert(Vec::new(), 0);
    let mut delta: Vec<Vec<Option<u32>>> = Vec::new();
    let mut q = 0usize;
    while q < sets.len() {
        let mut row = vec![None; rank];
        for s in 0..rank {
            let set = &sets[q];
            if set.binary_search(&simple_ids[s]).is_ok() {
                continue; // reading s would undo the last crossing: not reduced
            }
            let mut next = vec![simple_ids[s]];
            for &a in set {
                if let ReflectEntry::Small(b) = sr.entry(a, s) {
                    next.push(b);
                }
            }
            next.sort_unstable();
            debug_assert!(next.windows(2).all(|w| w[0] != w[1]));
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = sets.len() as u32;
                    if sets.len() >= max_states {
                        return Err(format!(
                            "Brink–Howlett construction exceeded {max_states} states"
                        ));
                    }
                    index.insert(next.clone(), t);
                    sets.push(next);
                    t
                }
            };
            row[s] = Some(target);
        }
        delta.push(row);
        q += 1;
    }

    let labels = sets.iter().map(|set| set_label(set)).collect();
    Ok(BhAutomaton {
        dfa: Dfa { letters: rank, start: 0, delta, labels },
        state_sets: sets,
    })
}

fn set_label(set: &[u32]) -> String {
    let inner: Vec<String> = set.iter().map(|a| format!("b{a}")).collect();
    format!("{{{}}}", inner.join(","))
}

/// Language-preserving minimization by partition refinement, treating an
/// absent transition as an observation (the implicit dead state).  Returns
/// the quotient automaton (canonically numbered by breadth-first search
/// from the start state) and the class of each input state.
pub fn minimize(dfa: &Dfa) -> (Dfa, Vec<u32>) {
    let n = dfa.num_states();
    // All states accepting: start from one class and refine by the classes
    // (or deadness) of the successors.
    let mut class = vec![0u32; n];
    let mut num_classes = 1usize;
    loop {
        let mut groups: BTreeMap<(u32, Vec<Option<u32>>), Vec<usize>> = BTreeMap::new();
        for q in 0..n {
            let sig: Vec<Option<u32>> =
                (0..dfa.letters).map(|s| dfa.step(q as u32, s).map(|t| class[t as usize])).collect();
            groups.entry((class[q], sig)).or_default().push(q);
        }
        if groups.len() == num_classes {
            break;
        }
        num_classes = groups.len();
        for (next_id, (_, members)) in groups.into_iter().enumerate() {
            for q in members {
                class[q] = next_id as u32;
            }
        }
    }

    // Quotient transitions on class representatives.
    let mut rep = vec![usize::MAX; num_classes];
    for q in (0..n).rev() {
        rep[class[q] as usize] = q;
    }
    // Canonical order: BFS from the start class, letters ascending.
    let mut order = vec![u32::MAX; num_classes];
    let mut queue = VecDeque::new();
    let start_class = class[dfa.start as usize] as usize;
    order[start_class] = 0;
    queue.push_back(start_class);
    let mut assigned = 1u32;
    while let Some(c) = queue.pop_front() {
        for s in 0..dfa.letters {
            if let Some(t) = dfa.step(rep[c] as u32, s) {
                let tc = class[t as usize] as usize;
                if order[tc] == u32::MAX {
                    order[tc] = assigned;
                    assigned += 1;
                    queue.push_back(tc);
                }
            }
        }
    }
    debug_assert!(order.iter().all(|&o| o != u32::MAX), "unreachable class after quotient");

    let mut delta = vec![vec![None; dfa.letters]; num_classes];
    let mut labels = vec![String::new(); num_classes];
    for c in 0..num_classes {
        let o = order[c] as usize;
        labels[o] = format!("c{o}");
        for s in 0..dfa.letters {
            delta[o][s] = dfa.step(rep[c] as u32, s).map(|t| order[class[t as usize] as usize]);
        }
    }
    let class_of: Vec<u32> = class.iter().map(|&c| order[c as usize]).collect();
    (Dfa { letters: dfa.letters, start: 0, delta, labels }, class_of)
}

/// Exact language equality: breadth-first search over state pairs demanding
/// identical definedness on every letter.
pub fn equivalent(a: &Dfa, b: &Dfa) -> bool {
    if a.letters != b.letters {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((a.start, b.start));
    queue.push_back((a.start, b.start));
    while let Some((qa, qb)) = queue.pop_front() {
        for s in 0..a.letters {
            match (a.step(qa, s), b.step(qb, s)) {
                (None, None) => {}
                (Some(ta), Some(tb)) => {
                    if seen.insert((ta, tb)) {
                        queue.push_back((ta, tb));
                    }
                }
                _ => return false,
            }
        }
    }
    true
}
