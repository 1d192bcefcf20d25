//! A small, complete DPLL solver: unit propagation, pure-literal
//! elimination, deterministic branching on the lowest unassigned variable
//! (true first), and a step budget so oversized instances fail loudly
//! instead of hanging.  One step = one variable assignment.

use crate::io::CnfFormula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(Vec<bool>),
    Unsat,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Res {
    Sat,
    Unsat,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Ok,
    Conflict,
    Exhausted,
}

struct Solver<'a> {
    clauses: &'a [Vec<i32>],
    nvars: usize,
    occ_pos: Vec<Vec<u32>>,
    occ_neg: Vec<Vec<u32>>,
    assign: Vec<i8>, // indexed by variable, 0 unknown / 1 true / -1 false
    n_true: Vec<u32>,
    n_unassigned: Vec<u32>,
    active_pos: Vec<u32>, // per variable: +v occurrences in not-yet-satisfied clauses
    active_neg: Vec<u32>,
    unsat_clauses: usize,
    trail: Vec<u32>,
    units: Vec<u32>,
    steps: u64,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn new(f: &'a CnfFormula, budget: u64) -> Self {
        let nvars = f.variable_count;
        let mut occ_pos = vec![Vec::new(); nvars + 1];
        let mut occ_neg = vec![Vec::new(); nvars + 1];
        let mut active_pos = vec![0u32; nvars + 1];
        let mut active_neg = vec![0u32; nvars + 1];
        let mut n_unassigned = Vec::with_capacity(f.clauses.len());
        for (c, clause) in f.clauses.iter().enumerate() {
            n_unassigned.push(clause.len() as u32);
            for &lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit > 0 {
                    occ_pos[v].push(c as u32);
                    active_pos[v] += 1;
                } else {
                    occ_neg[v].push(c as u32);
                    active_neg[v] += 1;
                }
            }
        }
        Solver {
            clauses: &f.clauses,
            nvars,
            occ_pos,
            occ_neg,
            assign: vec![0; nvars + 1],
            n_true: vec![0; f.clauses.len()],
            n_unassigned,
            active_pos,
            active_neg,
            unsat_clauses: f.clauses.len(),
            trail: Vec::new(),
            units: Vec::new(),
            steps: 0,
            budget,
        }
    }

    fn set(&mut self, v: usize, value: i8) -> Step {
        self.steps += 1;
        if self.steps > self.budget {
            return Step::Exhausted;
        }
        debug_assert_eq!(self.assign[v], 0);
        self.assign[v] = value;
        self.trail.push(v as u32);
        let (occ_same, occ_opp) = if value == 1 {
            (&self.occ_pos[v], &self.occ_neg[v])
        } else {
            (&self.occ_neg[v], &self.occ_pos[v])
        };
        for &c in occ_same {
            let c = c as usize;
            self.n_true[c] += 1;
            if self.n_true[c] == 1 {
                self.unsat_clauses -= 1;
                for &lit in &self.clauses[c] {
                    let w = lit.unsigned_abs() as usize;
                    if lit > 0 {
                        self.active_pos[w] -= 1;
                    } else {
                        self.active_neg[w] -= 1;
                    }
                }
            }
        }
        let mut conflict = false;
        for &c in occ_opp {
            let c = c as usize;
            self.n_unassigned[c] -= 1;
            if self.n_true[c] == 0 {
                match self.n_unassigned[c] {
                    0 => conflict = true,
                    1 => self.units.push(c as u32),
                    _ => {}
                }
            }
        }
        if conflict {
            Step::Conflict
        } else {
            Step::Ok
        }
    }

    fn unset(&mut self, v: usize) {
        let value = self.assign[v];
        let (occ_same, occ_opp) = if value == 1 {
            (&self.occ_pos[v], &self.occ_neg[v])
        } else {
            (&self.occ_neg[v], &self.occ_pos[v])
        };
        for &c in occ_same {
            let c = c as usize;
            if self.n_true[c] == 1 {
                self.unsat_clauses += 1;
                for &lit in &self.clauses[c] {
                    let w = lit.unsigned_abs() as usize;
                    if lit > 0 {
                        self.active_pos[w] += 1;
                    } else {
                        self.active_neg[w] += 1;
                    }
                }
            }
            self.n_true[c] -= 1;
        }
        for &c in occ_opp {
            self.n_unassigned[c as usize] += 1;
        }
        self.assign[v] = 0;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap() as usize;
            self.unset(v);
        }
        self.units.clear();
    }

    fn drain_units(&mut self) -> Step {
        while let Some(c) = self.units.pop() {
            let c = c as usize;
            if self.n_true[c] > 0 || self.n_unassigned[c] != 1 {
                continue; // stale entry
            }
            let lit = *self.clauses[c]
                .iter()
                .find(|l| self.assign[l.unsigned_abs() as usize] == 0)
                .expect("an unassigned literal must remain");
            let v = lit.unsigned_abs() as usize;
            match self.set(v, if lit > 0 { 1 } else { -1 }) {
                Step::Ok => {}
                other => return other,
            }
        }
        Step::Ok
    }

    /// Unit propagation to a fixpoint, then one ascending pure-literal pass
    /// (units drained after each elimination).  A single pass keeps this
    /// linear per call; pures it misses are only an optimisation anyway.
    fn deduce(&mut self) -> Step {
        match self.drain_units() {
            Step::Ok => {}
            other => return other,
        }
        for v in 1..=self.nvars {
            if self.assign[v] != 0 {
                continue;
            }
            if self.active_pos[v] == 0 || self.active_neg[v] == 0 {
                let value = if self.active_pos[v] > 0 { 1 } else { -1 };
                match self.set(v, value) {
                    Step::Ok => {}
                    other => return other,
                }
                match self.drain_units() {
                    Step::Ok => {}
                    other => return other,
                }
            }
        }
        Step::Ok
    }

    fn dpll(&mut self) -> Res {
        if self.unsat_clauses == 0 {
            return Res::Sat;
        }
        let v = (1..=self.nvars)
            .find(|&v| self.assign[v] == 0)
            .expect("an unsatisfied clause must hold an unassigned literal");
        for value in [1i8, -1] {
            let mark = self.trail.len();
            let step = match self.set(v, value) {
                Step::Ok => self.deduce(),
                other => other,
            };
            match step {
                Step::Exhausted => return Res::Exhausted,
                Step::Conflict => {
                    self.undo_to(mark);
                    continue;
                }
                Step::Ok => {}
            }
            match self.dpll() {
                Res::Unsat => self.undo_to(mark),
                verdict => return verdict,
            }
        }
        Res::Unsat
    }
}

pub fn dpll_solve(f: &CnfFormula, budget: u64) -> SolveOutcome {
    if f.clauses.iter().any(Vec::is_empty) {
        return SolveOutcome::Unsat;
    }
    let mut s = Solver::new(f, budget);
    for (c, clause) in f.clauses.iter().enumerate() {
        if clause.len() == 1 {
            s.units.push(c as u32);
        }
    }
    let initial = s.deduce();
    let verdict = match initial {
        Step::Exhausted => Res::Exhausted,
        Step::Conflict => Res::Unsat,
        Step::Ok => s.dpll(),
    };
    match verdict {
        Res::Sat => SolveOutcome::Sat((1..=s.nvars).map(|v| s.assign[v] == 1).collect()),
        Res::Unsat => SolveOutcome::Unsat,
        Res::Exhausted => SolveOutcome::BudgetExhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(nvars: usize, clauses: Vec<Vec<i32>>) -> CnfFormula {
        let f = CnfFormula { variable_count: nvars, clauses };
        f.validate().unwrap();
        f
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(
            dpll_solve(&f(1, vec![vec![1]]), u64::MAX),
            SolveOutcome::Sat(vec![true])
        );
        assert_eq!(dpll_solve(&f(1, vec![vec![1], vec![-1]]), u64::MAX), SolveOutcome::Unsat);
        assert_eq!(dpll_solve(&f(2, vec![]), u64::MAX), SolveOutcome::Sat(vec![false, false]));
    }

    #[test]
    fn unit_chain_propagates() {
        // 1, 1->2, 2->3 forces all three true
        let formula = f(3, vec![vec![1], vec![-1, 2], vec![-2, 3]]);
        assert_eq!(dpll_solve(&formula, u64::MAX), SolveOutcome::Sat(vec![true, true, true]));
    }

    #[test]
    fn branching_is_deterministic_lowest_true_first() {
        // satisfiable either way round; lowest variable tried true first
        let formula = f(2, vec![vec![1, 2], vec![-1, 2], vec![1, -2]]);
        assert_eq!(dpll_solve(&formula, u64::MAX), SolveOutcome::Sat(vec![true, true]));
    }

    #[test]
    fn pigeonhole_3_into_2_is_unsat() {
        // p_{i,j}: pigeon i in hole j; vars 1..=6
        let v = |i: usize, j: usize| (i * 2 + j + 1) as i32;
        let mut clauses = Vec::new();
        for i in 0..3 {
            clauses.push(vec![v(i, 0), v(i, 1)]);
        }
        for j in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    clauses.push(vec![-v(a, j), -v(b, j)]);
                }
            }
        }
        assert_eq!(dpll_solve(&f(6, clauses), u64::MAX), SolveOutcome::Unsat);
    }

    #[test]
    fn zero_budget_exhausts_immediately() {
        let formula = f(2, vec![vec![1, 2], vec![-1, -2]]);
        assert_eq!(dpll_solve(&formula, 0), SolveOutcome::BudgetExhausted);
    }
}
