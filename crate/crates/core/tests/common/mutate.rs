//! Structured mutations of accepted proof scripts.

use lpw_core::proof::{Justification, ProofScript};
use lpw_core::registry::Registry;
use lpw_core::Formula;

/// Mutations of an accepted script that the checker must reject: formula
/// edits on derived lines, premise redirects to a differently shaped line,
/// and removal of registry entries.
pub fn mutations(script: &ProofScript, r: &Registry, at_least: usize) -> Vec<(String, ProofScript, Registry)> {
    let mut out = Vec::new();
    for (k, line) in script.lines.iter().enumerate() {
        if line.justification == Justification::Hypothesis {
            continue;
        }
        let mut edit = |label: &str, f: Formula| {
            if f != line.formula {
                let mut m = script.clone();
                m.lines[k].formula = f;
                out.push((format!("edit line {} ({label})", line.id), m, r.clone()));
            }
        };
        edit("negate", Formula::not(line.formula.clone()));
        edit("conjoin", Formula::and(line.formula.clone(), Formula::prop("Zz")));
        if k > 0 {
            edit("previous formula", script.lines[k - 1].formula.clone());
        }
        for (p, premise) in line.justification.premises().into_iter().enumerate() {
            let cited = script.line(premise).unwrap().formula.clone();
            for earlier in &script.lines[..k] {
                if earlier.formula != cited && earlier.id != premise {
                    let mut m = script.clone();
                    *m.premises_mut(k)[p] = earlier.id.clone();
                    out.push((format!("redirect line {} premise {p} to {}", line.id, earlier.id), m, r.clone()));
                    break;
                }
            }
        }
    }
    // Pad with conjunctions against fresh atoms, cycling over derived lines.
    let derived: Vec<usize> =
        (0..script.lines.len()).filter(|&k| script.lines[k].justification != Justification::Hypothesis).collect();
    let mut fresh = 0;
    while out.len() + r.len() < at_least && !derived.is_empty() {
        let k = derived[fresh % derived.len()];
        let mut m = script.clone();
        let side = Formula::prop(format!("Fresh{fresh}"));
        m.lines[k].formula = if fresh % 2 == 0 {
            Formula::and(side, m.lines[k].formula.clone())
        } else {
            Formula::imp(side, m.lines[k].formula.clone())
        };
        out.push((format!("edit line {} (fresh atom {fresh})", script.lines[k].id), m, r.clone()));
        fresh += 1;
    }
    for (atom, _) in r.iter() {
        let mut smaller = r.clone();
        smaller.remove(atom);
        out.push((format!("drop {atom} from the registry"), script.clone(), smaller));
    }
    out
}
