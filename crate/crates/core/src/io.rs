//! Instance generation, the matrix text format, and solution documents.
//!
//! Matrix format: the first non-comment line is `R C`, followed by `R` lines
//! of `C` space-separated `0`/`1` entries. Lines starting with `#` are
//! comments; a `# name <text>` comment names the instance. Rows become `U`
//! vertices and columns `V` vertices.
//!
//! Solution documents are JSON with 1-based row and column indices.

use std::collections::BTreeSet;

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    cells_of, grouping_efficacy, Biclusterization, BipartiteInstance, Cell, EditSolution, Efficacy,
};

/// ChaCha with 8 rounds seeded through `seed_from_u64`, one Bernoulli draw per
/// potential edge in row-major order.
pub const RNG_ID: &str = "chacha8-bernoulli-rowmajor";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub m: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub rng_id: String,
}

impl GenSpec {
    pub fn new(m: usize, n: usize, p: f64, seed: u64) -> Self {
        Self {
            m,
            n,
            p,
            seed,
            rng_id: RNG_ID.to_string(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidArgument(format!(
                "dimensions {}x{} must be positive",
                self.m, self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidArgument(format!(
                "edge probability {} is outside [0, 1]",
                self.p
            )));
        }
        if self.rng_id != RNG_ID {
            return Err(Error::InvalidArgument(format!(
                "unknown generator '{}'",
                self.rng_id
            )));
        }
        Ok(())
    }
}

/// Binomial random bipartite graph; the same spec always yields the same graph.
pub fn generate(spec: &GenSpec) -> Result<BipartiteInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let coin = Bernoulli::new(spec.p).expect("validated probability");
    let mut edges = Vec::new();
    for i in 0..spec.m {
        for j in 0..spec.n {
            if coin.sample(&mut rng) {
                edges.push((i, j));
            }
        }
    }
    BipartiteInstance::new(spec.m, spec.n, edges)
}

/// Matrix text with a provenance comment recording the generator settings.
pub fn write_generated(instance: &BipartiteInstance, spec: &GenSpec) -> String {
    let header = format!(
        "# generated m={} n={} p={} seed={} rng={}\n",
        spec.m, spec.n, spec.p, spec.seed, spec.rng_id
    );
    header + &write_instance(instance)
}

pub fn write_instance(instance: &BipartiteInstance) -> String {
    let mut out = String::new();
    if let Some(name) = instance.name() {
        out.push_str(&format!("# name {name}\n"));
    }
    out.push_str(&format!("{} {}\n", instance.u_count(), instance.v_count()));
    for i in 0..instance.u_count() {
        let row: Vec<&str> = (0..instance.v_count())
            .map(|j| if instance.has_edge(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push((s, &line[s..pos]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn read_instance(text: &str) -> Result<BipartiteInstance> {
    let mut name = None;
    let mut dims: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("name ") {
                name = Some(n.trim().to_string());
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let toks = tokens(line);
        let Some((r, c)) = dims else {
            if toks.len() != 2 {
                let col = toks.get(2).map_or(line.chars().count() + 1, |t| t.0);
                return Err(parse_err(lineno, col, "header must be 'ROWS COLS'"));
            }
            let parse = |(col, tok): (usize, &str)| -> Result<usize> {
                match tok.parse::<usize>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(parse_err(
                        lineno,
                        col,
                        format!("'{tok}' is not a positive dimension"),
                    )),
                }
            };
            dims = Some((parse(toks[0])?, parse(toks[1])?));
            continue;
        };
        if rows.len() == r {
            return Err(parse_err(
                lineno,
                toks[0].0,
                format!("more than {r} matrix rows"),
            ));
        }
        let mut row = Vec::with_capacity(c);
        for &(col, tok) in &toks {
            if row.len() == c {
                return Err(parse_err(
                    lineno,
                    col,
                    format!("row has more than {c} entries"),
                ));
            }
            match tok {
                "0" => row.push(false),
                "1" => row.push(true),
                _ => {
                    return Err(parse_err(
                        lineno,
                        col,
                        format!("entry '{tok}' is not 0 or 1"),
                    ))
                }
            }
        }
        if row.len() < c {
            return Err(parse_err(
                lineno,
                line.chars().count() + 1,
                format!("row has {} entries, expected {c}", row.len()),
            ));
        }
        rows.push(row);
    }
    let Some((r, _)) = dims else {
        return Err(parse_err(last_line.max(1), 1, "missing 'ROWS COLS' header"));
    };
    if rows.len() < r {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("expected {r} matrix rows, found {}", rows.len()),
        ));
    }
    let instance = BipartiteInstance::from_matrix(&rows)?;
    Ok(match name {
        Some(n) => instance.with_name(n),
        None => instance,
    })
}

/// The bundled 7x5 part-machine matrix (16 ones).
pub fn block_example() -> BipartiteInstance {
    read_instance(include_str!("../data/block_example_7x5.txt")).expect("bundled matrix parses")
}

/// The two-cell clustering of [`block_example`] with efficacy 14/19.
pub fn block_example_cells() -> Biclusterization {
    let u = [0, 1, 0, 1, 1, 1, 0];
    let v = [1, 0, 0, 1, 0];
    Biclusterization::from_labels(&u, &v)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditCounts {
    pub a: usize,
    pub d: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: usize,
    pub cuts: usize,
    pub seconds: f64,
}

/// Serialized solution. Cells are paired by position: `row_cells[k]` and
/// `col_cells[k]` form cell `k`. Pairs in `additions`/`deletions` are
/// `[row, col]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub instance_name: String,
    pub method: String,
    pub efficacy: Option<Efficacy>,
    pub edits: EditCounts,
    pub row_cells: Vec<Vec<usize>>,
    pub col_cells: Vec<Vec<usize>>,
    pub additions: Vec<[usize; 2]>,
    pub deletions: Vec<[usize; 2]>,
    pub stats: SolveStats,
    pub proven: bool,
}

fn one_based(set: &BTreeSet<(usize, usize)>) -> Vec<[usize; 2]> {
    set.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
}

impl SolutionDoc {
    pub fn from_solution(
        instance: &BipartiteInstance,
        method: impl Into<String>,
        solution: &EditSolution,
        stats: SolveStats,
        proven: bool,
    ) -> Result<Self> {
        let efficacy = match grouping_efficacy(instance, &solution.clustering) {
            Ok(e) => Some(e),
            Err(Error::NoEdges) => None,
            Err(e) => return Err(e),
        };
        let cells = cells_of(&solution.clustering);
        Ok(Self {
            instance_name: instance.name().unwrap_or("unnamed").to_string(),
            method: method.into(),
            efficacy,
            edits: EditCounts {
                a: solution.a(),
                d: solution.d(),
            },
            row_cells: cells
                .iter()
                .map(|c| c.rows.iter().map(|r| r + 1).collect())
                .collect(),
            col_cells: cells
                .iter()
                .map(|c| c.cols.iter().map(|k| k + 1).collect())
                .collect(),
            additions: one_based(&solution.added),
            deletions: one_based(&solution.removed),
            stats,
            proven,
        })
    }

    fn check_structure(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Schema(m));
        if self.row_cells.len() != self.col_cells.len() {
            return bad(format!(
                "{} row cells but {} column cells",
                self.row_cells.len(),
                self.col_cells.len()
            ));
        }
        for (what, cells) in [("row", &self.row_cells), ("column", &self.col_cells)] {
            let mut seen = BTreeSet::new();
            for &x in cells.iter().flatten() {
                if x == 0 {
                    return bad(format!("{what} index 0; indices are 1-based"));
                }
                if !seen.insert(x) {
                    return bad(format!("{what} {x} appears in two cells"));
                }
            }
            if let Some(&max) = seen.last() {
                if seen.len() != max {
                    let missing = (1..=max).find(|x| !seen.contains(x)).expect("gap exists");
                    return bad(format!("{what} {missing} is in no cell"));
                }
            }
        }
        if self
            .row_cells
            .iter()
            .zip(&self.col_cells)
            .any(|(r, c)| r.is_empty() && c.is_empty())
        {
            return bad("empty cell".into());
        }
        if self.edits.a != self.additions.len() || self.edits.d != self.deletions.len() {
            return bad("edit counts disagree with the listed edits".into());
        }
        if let Some(e) = self.efficacy {
            if e.den == 0 || e.num > e.den {
                return bad(format!("efficacy {e} is not in [0, 1]"));
            }
        }
        if self
            .additions
            .iter()
            .chain(&self.deletions)
            .any(|p| p[0] == 0 || p[1] == 0)
        {
            return bad("edit with index 0; indices are 1-based".into());
        }
        Ok(())
    }

    /// Checks the document against the instance it claims to solve and
    /// returns the decoded solution.
    pub fn validate_against(&self, instance: &BipartiteInstance) -> Result<EditSolution> {
        self.check_structure()?;
        let cells: Vec<Cell> = self
            .row_cells
            .iter()
            .zip(&self.col_cells)
            .map(|(r, c)| Cell {
                rows: r.iter().map(|x| x - 1).collect(),
                cols: c.iter().map(|x| x - 1).collect(),
            })
            .collect();
        let clustering =
            Biclusterization::from_cells(instance.u_count(), instance.v_count(), &cells)
                .map_err(|e| Error::Schema(e.to_string()))?;
        let solution = EditSolution::new(instance, clustering)?;
        let expected = Self::from_solution(
            instance,
            self.method.clone(),
            &solution,
            self.stats,
            self.proven,
        )?;
        let as_set = |v: &[[usize; 2]]| v.iter().copied().collect::<BTreeSet<_>>();
        if as_set(&self.additions) != as_set(&expected.additions)
            || as_set(&self.deletions) != as_set(&expected.deletions)
        {
            return Err(Error::Schema("listed edits do not match the cells".into()));
        }
        if self.efficacy != expected.efficacy {
            return Err(Error::Schema(format!(
                "efficacy {:?} does not match the cells ({:?})",
                self.efficacy, expected.efficacy
            )));
        }
        Ok(solution)
    }
}

pub fn write_solution(doc: &SolutionDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("solution documents serialize");
    s.push('\n');
    s
}

pub fn read_solution(text: &str) -> Result<SolutionDoc> {
    let doc: SolutionDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    doc.check_structure()?;
    Ok(doc)
}
