//! 2SAT via strongly connected components of the implication graph.

/// Incremental 2-CNF instance over variables `0..n`. A literal is `(var, value)`.
#[derive(Clone, Debug, Default)]
pub struct TwoSat {
    n: usize,
    clauses: Vec<[(usize, bool); 2]>,
}

fn node(l: (usize, bool)) -> usize {
    2 * l.0 + usize::from(!l.1)
}

impl TwoSat {
    pub fn new(n: usize) -> TwoSat {
        TwoSat { n, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn add_var(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_clause(&mut self, a: (usize, bool), b: (usize, bool)) {
        assert!(a.0 < self.n && b.0 < self.n, "literal out of range");
        self.clauses.push([a, b]);
    }

    pub fn add_unit(&mut self, a: (usize, bool)) {
        self.add_clause(a, a);
    }

    /// A satisfying assignment, or `None`.
    pub fn solve(&self) -> Option<Vec<bool>> {
        self.solve_with(&[])
    }

    /// Solves with extra unit assumptions, leaving the instance unchanged.
    pub fn solve_with(&self, units: &[(usize, bool)]) -> Option<Vec<bool>> {
        let nodes = 2 * self.n;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        let imp = |adj: &mut Vec<Vec<usize>>, a: (usize, bool), b: (usize, bool)| {
            adj[node((a.0, !a.1))].push(node(b));
            adj[node((b.0, !b.1))].push(node(a));
        };
        for &[a, b] in &self.clauses {
            imp(&mut adj, a, b);
        }
        for &u in units {
            imp(&mut adj, u, u);
        }
        let comp = tarjan(&adj);
        let mut out = vec![false; self.n];
        for (v, slot) in out.iter_mut().enumerate() {
            let (t, f) = (comp[2 * v], comp[2 * v + 1]);
            if t == f {
                return None;
            }
            // components come out in reverse topological order
            *slot = t < f;
        }
        Some(out)
    }
}

/// Solves a 2-CNF given as clause list.
pub fn solve_2sat(n: usize, clauses: &[[(usize, bool); 2]]) -> Option<Vec<bool>> {
    let mut s = TwoSat::new(n);
    for &[a, b] in clauses {
        s.add_clause(a, b);
    }
    s.solve()
}

fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}
