//! CSV and Markdown renderings of a normal form.

use std::fmt::Write as _;

use crate::equilibrium::ImprovementLabel;
use crate::game::GameForm;
use crate::strategy::NormalForm;

fn cell_text(game: &GameForm, nf: &NormalForm, index: usize, labels: Option<&[ImprovementLabel]>) -> (String, String) {
    let outcome = game.outcome_name(nf.cells()[index]).to_string();
    let improvers = labels.map(|l| l[index].improvers_string()).unwrap_or_default();
    (outcome, improvers)
}

/// One row per situation: 1-based strategy indices, outcome, improvers
/// (empty when `labels` is `None`). Rows run with player 1's index slowest.
pub fn normal_form_csv(game: &GameForm, nf: &NormalForm, labels: Option<&[ImprovementLabel]>) -> String {
    let n = nf.num_players();
    let mut out = String::new();
    for i in 1..=n {
        write!(out, "s{i},").unwrap();
    }
    out.push_str("outcome,improvers\n");
    let shape = nf.shape();
    let mut coords = vec![0usize; n];
    for _ in 0..nf.len() {
        let index = nf.index(&coords);
        let (outcome, improvers) = cell_text(game, nf, index, labels);
        for c in &coords {
            write!(out, "{},", c + 1).unwrap();
        }
        writeln!(out, "{outcome},{improvers}").unwrap();
        // odometer with the last player fastest
        for k in (0..n).rev() {
            coords[k] += 1;
            if coords[k] < shape[k] {
                break;
            }
            coords[k] = 0;
        }
    }
    out
}

/// All index combinations of `players` (1-based), first player outermost.
fn combos(shape: &[usize], players: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for &p in players {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..shape[p - 1]).map(move |k| {
                    let mut v = prefix.clone();
                    v.push((p, k));
                    v
                })
            })
            .collect();
    }
    out
}

/// Grid with odd players on the rows and even players on the columns, the
/// highest-numbered player outermost on each side. For four players this is
/// rows `s3` then `s1`, column blocks `s4` then `s2`. Cells read
/// `<outcome>^<improvers>`, or just the outcome when nobody improves.
pub fn normal_form_markdown(game: &GameForm, nf: &NormalForm, labels: Option<&[ImprovementLabel]>) -> String {
    let n = nf.num_players();
    let shape = nf.shape();
    let row_players: Vec<usize> = (1..=n).rev().filter(|i| i % 2 == 1).collect();
    let col_players: Vec<usize> = (1..=n).rev().filter(|i| i % 2 == 0).collect();
    let rows = combos(&shape, &row_players);
    let cols = combos(&shape, &col_players);

    let mut out = String::from("|");
    for p in &row_players {
        write!(out, " s{p} |").unwrap();
    }
    for col in &cols {
        let label: Vec<String> = col.iter().map(|(p, k)| format!("s{p}_{}", k + 1)).collect();
        let label = if label.is_empty() { "outcome".to_string() } else { label.join(" ") };
        write!(out, " {label} |").unwrap();
    }
    out.push_str("\n|");
    for _ in 0..row_players.len() + cols.len() {
        out.push_str(" --- |");
    }
    out.push('\n');

    let mut coords = vec![0usize; n];
    for row in &rows {
        out.push('|');
        for &(p, k) in row {
            coords[p - 1] = k;
            write!(out, " s{p}_{} |", k + 1).unwrap();
        }
        for col in &cols {
            for &(p, k) in col {
                coords[p - 1] = k;
            }
            let (outcome, improvers) = cell_text(game, nf, nf.index(&coords), labels);
            if improvers.is_empty() {
                write!(out, " {outcome} |").unwrap();
            } else {
                write!(out, " {outcome}^{improvers} |").unwrap();
            }
        }
        out.push('\n');
    }
    out
}
