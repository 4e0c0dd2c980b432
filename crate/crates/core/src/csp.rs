//! Max-2-CSP instances over a finite domain, degree-at-most-2 variable
//! elimination, and branching on a K4-minor-free transversal of the
//! constraint graph.
//!
//! Text format, one directive per line (`#` starts a comment line):
//!
//! ```text
//! r 2
//! variables 3
//! constant 0
//! unary 0 3 7
//! binary 0 1 0 1 1 0
//! ```
//!
//! `unary v s_0 .. s_{r-1}` and `binary u v` followed by the `r*r` table in
//! row-major order (row = value of `u`). Scores are integers or `p/q`.
//! Variables are `0..variables`; omitted tables are zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::oracle::exact_s;
use crate::potential::greedy_fifth_transversal;
use crate::reduction::is_k4_minor_free;
use crate::Rational;

pub type VariableId = VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    r: usize,
    variables: BTreeSet<VariableId>,
    unary: BTreeMap<VariableId, Vec<Rational>>,
    /// Keyed by `(u, v)` with `u < v`; entry `a * r + b` scores `u = a, v = b`.
    binary: BTreeMap<(VariableId, VariableId), Vec<Rational>>,
    constant: Rational,
}

impl CspInstance {
    /// `n` variables `0..n` with all-zero tables.
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("domain size must be at least 1"));
        }
        let variables: BTreeSet<VariableId> = (0..n as u32).map(VertexId).collect();
        let unary = variables
            .iter()
            .map(|&v| (v, vec![Rational::zero(); r]))
            .collect();
        Ok(CspInstance {
            r,
            variables,
            unary,
            binary: BTreeMap::new(),
            constant: Rational::zero(),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn variables(&self) -> &BTreeSet<VariableId> {
        &self.variables
    }

    pub fn constant(&self) -> Rational {
        self.constant
    }

    pub fn unary(&self, v: VariableId) -> Result<&[Rational]> {
        self.unary
            .get(&v)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn set_constant(&mut self, c: Rational) {
        self.constant = c;
    }

    fn check_var(&self, v: VariableId) -> Result<()> {
        if self.variables.contains(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn check_len(&self, got: usize, want: usize) -> Result<()> {
        if got == want {
            Ok(())
        } else {
            Err(Error::domain(format!("score table has {got} entries, expected {want}")))
        }
    }

    pub fn set_unary(&mut self, v: VariableId, scores: Vec<Rational>) -> Result<()> {
        self.check_var(v)?;
        self.check_len(scores.len(), self.r)?;
        self.unary.insert(v, scores);
        Ok(())
    }

    /// Sets the table for the pair `(u, v)`; `table[a * r + b]` scores
    /// `u = a, v = b` whichever of the two ids is smaller.
    pub fn set_binary(&mut self, u: VariableId, v: VariableId, table: Vec<Rational>) -> Result<()> {
        self.check_var(u)?;
        self.check_var(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check_len(table.len(), self.r * self.r)?;
        let table = if u < v { table } else { self.transpose(&table) };
        self.binary.insert((u.min(v), u.max(v)), table);
        Ok(())
    }

    fn transpose(&self, t: &[Rational]) -> Vec<Rational> {
        let r = self.r;
        (0..r * r).map(|i| t[(i % r) * r + i / r]).collect()
    }

    /// Score of `u = a, v = b` for a constrained pair, zero otherwise.
    pub fn binary_score(&self, u: VariableId, a: usize, v: VariableId, b: usize) -> Rational {
        let r = self.r;
        if u < v {
            self.binary.get(&(u, v)).map_or(Rational::zero(), |t| t[a * r + b])
        } else {
            self.binary.get(&(v, u)).map_or(Rational::zero(), |t| t[b * r + a])
        }
    }

    pub fn binary_pairs(&self) -> impl Iterator<Item = (VariableId, VariableId)> + '_ {
        self.binary.keys().copied()
    }

    fn neighbors(&self, v: VariableId) -> Vec<VariableId> {
        self.binary
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// One vertex per variable, one edge per binary table.
    pub fn constraint_graph(&self) -> Graph {
        let mut g = Graph::new();
        for &v in &self.variables {
            g.insert_vertex(v);
        }
        for &(u, v) in self.binary.keys() {
            g.add_edge(u, v).expect("binary keys are distinct variable pairs");
        }
        g
    }

    /// Objective of a full assignment.
    pub fn evaluate(&self, values: &BTreeMap<VariableId, usize>) -> Result<Rational> {
        let value = |v: VariableId| -> Result<usize> {
            match values.get(&v) {
                Some(&a) if a < self.r => Ok(a),
                Some(&a) => Err(Error::domain(format!("value {a} of {v} is outside the domain"))),
                None => Err(Error::domain(format!("variable {v} is unassigned"))),
            }
        };
        let mut total = self.constant;
        for (&v, scores) in &self.unary {
            total += scores[value(v)?];
        }
        for (&(u, v), t) in &self.binary {
            total += t[value(u)? * self.r + value(v)?];
        }
        Ok(total)
    }

    /// Removes `x` after committing it to `a`: its unary score goes into the
    /// constant and each incident table into the neighbor's unary scores.
    fn fix(&mut self, x: VariableId, a: usize) {
        let r = self.r;
        self.constant += self.unary[&x][a];
        for u in self.neighbors(x) {
            for b in 0..r {
                let s = self.binary_score(x, a, u, b);
                self.unary.get_mut(&u).unwrap()[b] += s;
            }
            self.binary.remove(&(x.min(u), x.max(u)));
        }
        self.unary.remove(&x);
        self.variables.remove(&x);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: BTreeMap<VariableId, usize>,
    pub objective: Rational,
}

/// How to pick a value for an eliminated variable once its remaining
/// neighbors are assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub variable: VariableId,
    pub neighbors: Vec<VariableId>,
    /// Best value, indexed by the neighbors' values in row-major order;
    /// ties go to the smallest value.
    pub choice: Vec<usize>,
}

impl Reconstruction {
    fn pick(&self, values: &BTreeMap<VariableId, usize>, r: usize) -> usize {
        let idx = self.neighbors.iter().fold(0, |acc, u| acc * r + values[u]);
        self.choice[idx]
    }
}

fn argmax(scores: impl Iterator<Item = Rational>) -> (usize, Rational) {
    let mut best: Option<(usize, Rational)> = None;
    for (c, s) in scores.enumerate() {
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((c, s));
        }
    }
    best.expect("domain is nonempty")
}

/// Removes a variable of constraint degree at most 2, folding its best
/// response into the rest of the instance.
pub fn eliminate_low_degree_variable(
    inst: &CspInstance,
    v: VariableId,
) -> Result<(CspInstance, Reconstruction)> {
    inst.check_var(v)?;
    let nbrs = inst.neighbors(v);
    let r = inst.r;
    let uv = &inst.unary[&v];
    let mut out = inst.clone();
    let choice = match nbrs.as_slice() {
        [] => {
            let (c, best) = argmax(uv.iter().copied());
            out.constant += best;
            vec![c]
        }
        &[u] => {
            let mut choice = Vec::with_capacity(r);
            for a in 0..r {
                let (c, best) = argmax((0..r).map(|c| uv[c] + inst.binary_score(u, a, v, c)));
                out.unary.get_mut(&u).unwrap()[a] += best;
                choice.push(c);
            }
            choice
        }
        &[u, w] => {
            let mut choice = Vec::with_capacity(r * r);
            let mut table = vec![Rational::zero(); r * r];
            for a in 0..r {
                for b in 0..r {
                    let (c, best) = argmax((0..r).map(|c| {
                        uv[c] + inst.binary_score(u, a, v, c) + inst.binary_score(v, c, w, b)
                    }));
                    table[a * r + b] = inst.binary_score(u, a, w, b) + best;
                    choice.push(c);
                }
            }
            out.binary.insert((u, w), table);
            choice
        }
        _ => {
            return Err(Error::domain(format!(
                "variable {v} has constraint degree {}, above 2",
                nbrs.len()
            )))
        }
    };
    for &u in &nbrs {
        out.binary.remove(&(u.min(v), u.max(v)));
    }
    out.unary.remove(&v);
    out.variables.remove(&v);
    Ok((
        out,
        Reconstruction {
            variable: v,
            neighbors: nbrs,
            choice,
        },
    ))
}

/// Optimal assignment when the constraint graph is K4-minor-free.
pub fn solve_treewidth2(inst: &CspInstance) -> Result<Assignment> {
    if !is_k4_minor_free(&inst.constraint_graph()) {
        return Err(Error::domain("constraint graph has a K4 minor"));
    }
    let mut cur = inst.clone();
    let mut rules = Vec::with_capacity(inst.variables.len());
    while let Some(v) = cur
        .variables
        .iter()
        .copied()
        .find(|&v| cur.neighbors(v).len() <= 2)
    {
        let (next, rule) = eliminate_low_degree_variable(&cur, v)?;
        rules.push(rule);
        cur = next;
    }
    debug_assert!(cur.variables.is_empty());
    let mut values = BTreeMap::new();
    for rule in rules.iter().rev() {
        let c = rule.pick(&values, inst.r);
        values.insert(rule.variable, c);
    }
    let objective = inst.evaluate(&values)?;
    debug_assert_eq!(objective, cur.constant);
    Ok(Assignment { values, objective })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransversalMethod {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspSolution {
    pub assignment: Assignment,
    pub transversal: VertexSet,
    /// Number of assignments to the transversal that were tried: `r^|X|`.
    pub branches: u64,
}

fn lex_key(values: &BTreeMap<VariableId, usize>) -> Vec<usize> {
    values.values().copied().collect()
}

fn better(cand: &Assignment, best: &Option<Assignment>) -> bool {
    match best {
        None => true,
        Some(b) => {
            cand.objective > b.objective
                || (cand.objective == b.objective && lex_key(&cand.values) < lex_key(&b.values))
        }
    }
}

/// Branches over every assignment of a transversal of the constraint graph
/// and solves each K4-minor-free remainder by elimination.
pub fn solve(inst: &CspInstance, method: TransversalMethod) -> CspSolution {
    let g = inst.constraint_graph();
    let transversal = match method {
        TransversalMethod::Exact => exact_s(&g).vertices,
        TransversalMethod::Greedy => greedy_fifth_transversal(&g).vertices,
    };
    let xs: Vec<VariableId> = transversal.iter().copied().collect();
    let r = inst.r;
    let mut digits = vec![0usize; xs.len()];
    let mut best: Option<Assignment> = None;
    let mut branches = 0u64;
    loop {
        branches += 1;
        let mut sub = inst.clone();
        for (&x, &a) in xs.iter().zip(&digits) {
            sub.fix(x, a);
        }
        let mut cand = solve_treewidth2(&sub).expect("remainder is K4-minor-free");
        cand.values.extend(xs.iter().copied().zip(digits.iter().copied()));
        cand.objective = inst.evaluate(&cand.values).expect("assignment is complete");
        if better(&cand, &best) {
            best = Some(cand);
        }
        let Some(pos) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < r) else {
            break;
        };
        digits[pos] += 1;
        for d in &mut digits[pos + 1..] {
            *d = 0;
        }
    }
    CspSolution {
        assignment: best.expect("at least one branch"),
        transversal,
        branches,
    }
}

/// Exhaustive `r^n` search; the lexicographically smallest optimum wins.
pub fn brute_force_csp(inst: &CspInstance) -> Assignment {
    let vars: Vec<VariableId> = inst.variables.iter().copied().collect();
    let mut digits = vec![0usize; vars.len()];
    let mut best: Option<Assignment> = None;
    loop {
        let values: BTreeMap<VariableId, usize> =
            vars.iter().copied().zip(digits.iter().copied()).collect();
        let objective = inst.evaluate(&values).expect("assignment is complete");
        if best.as_ref().is_none_or(|b| objective > b.objective) {
            best = Some(Assignment { values, objective });
        }
        let Some(pos) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < inst.r) else {
            break;
        };
        digits[pos] += 1;
        for d in &mut digits[pos + 1..] {
            *d = 0;
        }
    }
    best.expect("at least one assignment")
}

/// Max Cut as a 2-valued CSP: each edge scores 1 when its ends differ.
pub fn encode_maxcut(g: &Graph) -> CspInstance {
    let mut inst = CspInstance {
        r: 2,
        variables: g.vertex_set(),
        unary: g.vertices().map(|v| (v, vec![Rational::zero(); 2])).collect(),
        binary: BTreeMap::new(),
        constant: Rational::zero(),
    };
    let one = Rational::from_integer(1);
    for (u, v) in g.edges() {
        inst.binary
            .insert((u, v), vec![Rational::zero(), one, one, Rational::zero()]);
    }
    inst
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational> {
    let bad = || Error::parse(line, format!("invalid score `{tok}`"));
    match tok.split_once('/') {
        None => tok.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_csp(text: &str) -> Result<CspInstance> {
    let mut r: Option<usize> = None;
    let mut inst: Option<CspInstance> = None;
    let mut constant = Rational::zero();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let key = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();
        let int = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{s}`")))
        };
        match key {
            "r" => {
                if r.is_some() || rest.len() != 1 {
                    return Err(Error::parse(line, "`r` must appear once with one value"));
                }
                r = Some(int(rest[0])?);
            }
            "variables" => {
                let Some(r) = r else {
                    return Err(Error::parse(line, "`variables` must follow `r`"));
                };
                if inst.is_some() || rest.len() != 1 {
                    return Err(Error::parse(line, "`variables` must appear once with one value"));
                }
                inst = Some(CspInstance::new(r, int(rest[0])?).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            "constant" => {
                if rest.len() != 1 {
                    return Err(Error::parse(line, "`constant` takes one value"));
                }
                constant = parse_rational(rest[0], line)?;
            }
            "unary" | "binary" => {
                let Some(inst) = inst.as_mut() else {
                    return Err(Error::parse(line, format!("`{key}` must follow `variables`")));
                };
                let arity = if key == "unary" { 1 } else { 2 };
                if rest.len() < arity {
                    return Err(Error::parse(line, format!("`{key}` is missing its variables")));
                }
                let ids: Vec<VariableId> = rest[..arity]
                    .iter()
                    .map(|s| int(s).map(|x| VertexId(x as u32)))
                    .collect::<Result<_>>()?;
                let scores: Vec<Rational> = rest[arity..]
                    .iter()
                    .map(|s| parse_rational(s, line))
                    .collect::<Result<_>>()?;
                let res = if arity == 1 {
                    inst.set_unary(ids[0], scores)
                } else if ids[0] > ids[1] {
                    Err(Error::domain("binary pairs must be listed as `u v` with u < v"))
                } else if inst.binary.contains_key(&(ids[0], ids[1])) {
                    Err(Error::domain("duplicate binary table"))
                } else {
                    inst.set_binary(ids[0], ids[1], scores)
                };
                res.map_err(|e| Error::parse(line, e.to_string()))?;
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let mut inst = inst.ok_or_else(|| Error::parse(0, "missing `r` or `variables`"))?;
    inst.constant = constant;
    Ok(inst)
}

/// Writes every table, including all-zero ones, in the text format.
pub fn write_csp(inst: &CspInstance) -> Result<String> {
    let expected: BTreeSet<VariableId> = (0..inst.variables.len() as u32).map(VertexId).collect();
    if inst.variables != expected {
        return Err(Error::domain("only instances over variables 0..n can be written"));
    }
    let join = |xs: &[Rational]| xs.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "r {}", inst.r).unwrap();
    writeln!(out, "variables {}", inst.variables.len()).unwrap();
    writeln!(out, "constant {}", format_rational(&inst.constant)).unwrap();
    for (v, s) in &inst.unary {
        writeln!(out, "unary {v} {}", join(s)).unwrap();
    }
    for ((u, v), t) in &inst.binary {
        writeln!(out, "binary {u} {v} {}", join(t)).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn v(i: u32) -> VariableId {
        VertexId(i)
    }

    fn equality_table() -> Vec<Rational> {
        vec![q(1), q(0), q(0), q(1)]
    }

    #[test]
    fn elimination_examples() {
        let zero = CspInstance::new(3, 3).unwrap();
        let (next, _) = eliminate_low_degree_variable(&zero, v(1)).unwrap();
        assert!(!next.variables().contains(&v(1)));
        assert!(next.unary.values().flatten().all(Rational::is_zero));
        assert!(next.constant().is_zero());

        let mut iso = CspInstance::new(2, 1).unwrap();
        iso.set_unary(v(0), vec![q(3), q(7)]).unwrap();
        let (next, rule) = eliminate_low_degree_variable(&iso, v(0)).unwrap();
        assert_eq!(next.constant(), q(7));
        assert_eq!(rule.choice, vec![1]);

        let mut path = CspInstance::new(2, 3).unwrap();
        path.set_binary(v(0), v(1), equality_table()).unwrap();
        path.set_binary(v(1), v(2), equality_table()).unwrap();
        let (next, _) = eliminate_low_degree_variable(&path, v(1)).unwrap();
        let t = &next.binary[&(v(0), v(2))];
        assert_eq!(t, &vec![q(2), q(1), q(1), q(2)]);

        let k4 = encode_maxcut(&Graph::complete(4));
        assert!(eliminate_low_degree_variable(&k4, v(0)).is_err());
    }

    #[test]
    fn treewidth2_examples() {
        let mut empty = CspInstance::new(2, 0).unwrap();
        empty.set_constant(q(4));
        assert_eq!(solve_treewidth2(&empty).unwrap().objective, q(4));

        let mut one = CspInstance::new(3, 1).unwrap();
        one.set_unary(v(0), vec![q(1), q(5), q(2)]).unwrap();
        let a = solve_treewidth2(&one).unwrap();
        assert_eq!((a.values[&v(0)], a.objective), (1, q(5)));

        assert_eq!(solve_treewidth2(&encode_maxcut(&Graph::cycle(5))).unwrap().objective, q(4));
        assert!(solve_treewidth2(&encode_maxcut(&Graph::complete(4))).is_err());
    }

    #[test]
    fn maxcut_optima() {
        for (g, want) in [
            (Graph::complete(2), 1),
            (Graph::complete(3), 2),
            (Graph::cycle(5), 4),
            (Graph::complete(5), 6),
            (Graph::complete(6), 9),
        ] {
            let inst = encode_maxcut(&g);
            assert_eq!(brute_force_csp(&inst).objective, q(want));
            for m in [TransversalMethod::Exact, TransversalMethod::Greedy] {
                let sol = solve(&inst, m);
                assert_eq!(sol.assignment.objective, q(want));
                assert_eq!(sol.branches, 1 << sol.transversal.len());
            }
        }
    }

    #[test]
    fn fixing_matches_evaluation() {
        let mut inst = encode_maxcut(&Graph::complete(4));
        inst.set_unary(v(2), vec![q(3), q(-1)]).unwrap();
        let mut fixed = inst.clone();
        fixed.fix(v(0), 1);
        fixed.fix(v(3), 0);
        let mut values = BTreeMap::from([(v(0), 1), (v(3), 0)]);
        for a in 0..2 {
            for b in 0..2 {
                values.insert(v(1), a);
                values.insert(v(2), b);
                let rest = BTreeMap::from([(v(1), a), (v(2), b)]);
                assert_eq!(fixed.evaluate(&rest).unwrap(), inst.evaluate(&values).unwrap());
            }
        }
    }

    #[test]
    fn orientation_of_binary_tables() {
        let mut inst = CspInstance::new(2, 2).unwrap();
        inst.set_binary(v(1), v(0), vec![q(1), q(2), q(3), q(4)]).unwrap();
        // row = value of 1, column = value of 0
        assert_eq!(inst.binary_score(v(1), 0, v(0), 1), q(2));
        assert_eq!(inst.binary_score(v(0), 1, v(1), 0), q(2));
        assert_eq!(inst.binary_score(v(0), 0, v(1), 1), q(3));
    }

    #[test]
    fn text_roundtrip() {
        let text = "# sample\nr 2\nvariables 3\nconstant 1/2\nunary 0 3 7\nbinary 0 1 0 1 1 0\n";
        let inst = parse_csp(text).unwrap();
        assert_eq!(inst.constant(), Rational::new(1, 2));
        assert_eq!(inst.unary(v(0)).unwrap(), &[q(3), q(7)]);
        let again = parse_csp(&write_csp(&inst).unwrap()).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn text_errors() {
        for bad in [
            "variables 2\nr 2\n",
            "r 2\nvariables 2\nunary 0 1\n",
            "r 2\nvariables 2\nbinary 1 0 0 0 0 0\n",
            "r 2\nvariables 2\nbinary 0 1 0 0 0 0\nbinary 0 1 0 0 0 0\n",
            "r 2\nvariables 2\nunary 5 1 1\n",
            "r 2\nvariables 2\nconstant 1/0\n",
            "r 2\nvariables 2\nfoo 1\n",
            "r 0\nvariables 2\n",
            "",
        ] {
            assert!(parse_csp(bad).is_err(), "{bad:?}");
        }
    }
}
