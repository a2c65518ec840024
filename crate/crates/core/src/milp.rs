//! Export of the vendor selection model as a binary integer program in LP
//! text format, for cross-checking with external MILP solvers.
//!
//! Variables are `x_i_j` (item `i` bought from vendor `j`) and `y_j` (vendor
//! `j` selected), 1-based. Absent bids get no variable and no row, which is
//! equivalent to pricing them prohibitively high.

use std::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::scalar::{format_amount, CostScalar};

/// Longest line written; legacy LP readers stop at 255 characters.
pub const MAX_LINE_WIDTH: usize = 255;
const WRAP_AT: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    Assign { item: usize, vendor: usize },
    Select { vendor: usize },
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Assign { item, vendor } => write!(f, "x_{}_{}", item + 1, vendor + 1),
            Var::Select { vendor } => write!(f, "y_{}", vendor + 1),
        }
    }
}

/// The model: objective terms, one assignment row per item, one linking row
/// `x_i_j <= y_j` per bid, every variable binary.
#[derive(Debug, Clone)]
pub struct IntegerProgram<T> {
    pub m: usize,
    pub n: usize,
    pub objective: Vec<(T, Var)>,
    pub assignment_rows: Vec<Vec<Var>>,
    pub linking_rows: Vec<(Var, Var)>,
}

pub fn export_integer_program<T: CostScalar>(instance: &Instance<T>) -> Result<IntegerProgram<T>> {
    if let Some(&i) = instance.zero_bid_items().first() {
        return Err(Error::UncoveredItem(instance.items()[i].id.clone()));
    }
    let (m, n) = (instance.m(), instance.n());
    let mut objective = Vec::with_capacity(instance.bid_count() + n);
    let mut assignment_rows = Vec::with_capacity(m);
    let mut linking_rows = Vec::with_capacity(instance.bid_count());
    for item in 0..m {
        let mut row = Vec::new();
        for (vendor, price) in instance.row(item).iter().enumerate() {
            if let Some(p) = *price {
                let x = Var::Assign { item, vendor };
                objective.push((p, x));
                row.push(x);
                linking_rows.push((x, Var::Select { vendor }));
            }
        }
        assignment_rows.push(row);
    }
    objective.extend((0..n).map(|vendor| (instance.fixed_cost(vendor), Var::Select { vendor })));
    Ok(IntegerProgram { m, n, objective, assignment_rows, linking_rows })
}

impl<T: CostScalar> IntegerProgram<T> {
    /// All variables in declaration order: `x` by item then vendor, then `y`.
    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        self.objective.iter().map(|&(_, v)| v)
    }

    /// Objective value at the point given by a solution: `x_i_j = 1` for
    /// each assignment, `y_j = 1` for each selected vendor.
    pub fn objective_at(&self, solution: &Solution<T>) -> T {
        self.objective
            .iter()
            .filter(|(_, var)| match *var {
                Var::Assign { item, vendor } => solution.assignment().get(item) == Some(&Some(vendor)),
                Var::Select { vendor } => solution.subset().contains(vendor),
            })
            .fold(T::zero(), |acc, &(c, _)| acc + c)
    }

    /// Render in LP format. Output is byte-stable: items ascending, vendors
    /// ascending, coefficients in major units with two decimals.
    pub fn to_lp_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ Multi-item vendor selection: {} items, {} vendors, {} bids",
            self.m,
            self.n,
            self.linking_rows.len()
        );
        out.push_str("Minimize\n");
        let terms = self.objective.iter().enumerate().map(|(k, (c, v))| {
            let coef = format_amount(*c);
            if k == 0 {
                format!("{coef} {v}")
            } else {
                format!("+ {coef} {v}")
            }
        });
        write_wrapped(&mut out, "total_cost:", terms, None);
        out.push_str("Subject To\n");
        for (i, row) in self.assignment_rows.iter().enumerate() {
            let terms = row.iter().enumerate().map(|(k, v)| if k == 0 { v.to_string() } else { format!("+ {v}") });
            write_wrapped(&mut out, &format!("assign_{}:", i + 1), terms, Some("= 1"));
        }
        for (x, y) in &self.linking_rows {
            let name = match x {
                Var::Assign { item, vendor } => format!("link_{}_{}:", item + 1, vendor + 1),
                Var::Select { .. } => unreachable!("linking rows start with an assignment variable"),
            };
            let _ = writeln!(out, " {name} {x} - {y} <= 0");
        }
        out.push_str("Binaries\n");
        write_wrapped(&mut out, "", self.variables().map(|v| v.to_string()), None);
        out.push_str("End\n");
        out
    }
}

fn write_wrapped(out: &mut String, label: &str, terms: impl Iterator<Item = String>, tail: Option<&str>) {
    let mut line = format!(" {label}");
    let mut has_term = false;
    for term in terms.chain(tail.map(str::to_string)) {
        if has_term && line.len() + 1 + term.len() > WRAP_AT {
            out.push_str(&line);
            out.push('\n');
            line = String::from(" ");
        }
        if line.len() > 1 {
            line.push(' ');
        }
        line.push_str(&term);
        has_term = true;
    }
    out.push_str(&line);
    out.push('\n');
}
