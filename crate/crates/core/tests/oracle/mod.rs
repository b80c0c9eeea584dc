//! Slow reference computations straight from the definitions.
//!
//! Nothing here touches the library except `FieldSpec`/`Scalar`: paths, ideals,
//! the zigzag algebra and the Hochschild complex are all rebuilt from plain
//! vertex/arrow lists. Paths compose right to left (`uv` = `v` first), the
//! opposite of the library, so agreement also checks convention independence.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use zigzag_hh::exactla::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub quantity: &'static str,
    pub parameters: String,
    pub value: usize,
    pub method: &'static str,
}

type Vector = BTreeMap<usize, Scalar>;

/// Echelon span with monic pivot rows, grown one vector at a time.
struct Span {
    field: FieldSpec,
    rows: HashMap<usize, Vector>,
}

impl Span {
    fn new(field: FieldSpec) -> Self {
        Span {
            field,
            rows: HashMap::new(),
        }
    }

    fn reduce(&self, mut v: Vector) -> Vector {
        let mut from = 0;
        loop {
            let Some((&col, c)) = v.range(from..).find(|(k, _)| self.rows.contains_key(k)) else {
                return v;
            };
            let c = c.clone();
            for (k, x) in &self.rows[&col] {
                let e = v.entry(*k).or_insert_with(|| self.field.zero());
                *e = e.clone() - c.clone() * x.clone();
                if e.is_zero() {
                    v.remove(k);
                }
            }
            from = col + 1;
        }
    }

    fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        let Some((&col, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inv().unwrap();
        let v = v.into_iter().map(|(k, x)| (k, x * inv.clone())).collect();
        self.rows.insert(col, v);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn vector(field: FieldSpec, terms: impl IntoIterator<Item = (usize, i64)>) -> Vector {
    let mut v = Vector::new();
    for (k, c) in terms {
        let e = v.entry(k).or_insert_with(|| field.zero());
        *e = e.clone() + field.from_i64(c);
    }
    v.retain(|_, c| !c.is_zero());
    v
}

/// A path `x₁ x₂ ⋯ x_n` read right to left: `x_n` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Word {
    head: usize,
    tail: usize,
    arrows: Vec<usize>,
}

/// The double of a quiver: arrow `k` and its reverse `k + m`.
struct Double {
    vertices: usize,
    ends: Vec<(usize, usize)>,
}

impl Double {
    fn new(vertices: usize, arrows: &[(usize, usize)]) -> Self {
        let mut ends = arrows.to_vec();
        ends.extend(arrows.iter().map(|&(s, t)| (t, s)));
        Double { vertices, ends }
    }

    fn base_count(&self) -> usize {
        self.ends.len() / 2
    }

    fn idempotent(&self, v: usize) -> Word {
        Word {
            head: v,
            tail: v,
            arrows: vec![],
        }
    }

    fn letter(&self, x: usize) -> Word {
        Word {
            head: self.ends[x].1,
            tail: self.ends[x].0,
            arrows: vec![x],
        }
    }

    fn mul(&self, u: &Word, w: &Word) -> Option<Word> {
        (u.tail == w.head).then(|| Word {
            head: u.head,
            tail: w.tail,
            arrows: u.arrows.iter().chain(&w.arrows).copied().collect(),
        })
    }

    fn words(&self, n: usize) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.vertices).map(|v| self.idempotent(v)).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &out {
                for x in 0..self.ends.len() {
                    if let Some(p) = self.mul(w, &self.letter(x)) {
                        next.push(p);
                    }
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// `e_v (Σ_α αα* − α*α) e_v` as signed words.
    fn relation(&self, v: usize) -> Vec<(Word, i64)> {
        let m = self.base_count();
        let mut out = Vec::new();
        for a in 0..m {
            let (al, st) = (self.letter(a), self.letter(a + m));
            if let Some(p) = self.mul(&al, &st) {
                if p.head == v {
                    out.push((p, 1));
                }
            }
            if let Some(p) = self.mul(&st, &al) {
                if p.head == v {
                    out.push((p, -1));
                }
            }
        }
        out
    }

    /// Span of all `u ρ_v w` of length `n`.
    fn ideal(&self, n: usize, index: &HashMap<Word, usize>, field: FieldSpec, span: &mut Span) {
        if n < 2 {
            return;
        }
        for i in 0..=n - 2 {
            let (us, ws) = (self.words(i), self.words(n - 2 - i));
            for v in 0..self.vertices {
                let rho = self.relation(v);
                if rho.is_empty() {
                    continue;
                }
                for u in us.iter().filter(|u| u.tail == v) {
                    for w in ws.iter().filter(|w| w.head == v) {
                        let terms = rho.iter().filter_map(|(r, c)| {
                            let p = self.mul(&self.mul(u, r)?, w)?;
                            index.get(&p).map(|&k| (k, *c))
                        });
                        span.insert(vector(field, terms));
                    }
                }
            }
        }
    }
}

fn index_of(words: &[Word]) -> HashMap<Word, usize> {
    words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect()
}

/// `dim Λⁿ` for the preprojective algebra of the quiver `(vertices, arrows)`.
pub fn oracle_lambda_dim(
    vertices: usize,
    arrows: &[(usize, usize)],
    n: usize,
    field: FieldSpec,
) -> OracleResult {
    let q = Double::new(vertices, arrows);
    let words = q.words(n);
    let index = index_of(&words);
    let mut span = Span::new(field);
    q.ideal(n, &index, field, &mut span);
    OracleResult {
        quantity: "dim Λ^n",
        parameters: format!("{vertices} vertices, {arrows:?}, n = {n}, {field}"),
        value: words.len() - span.rank(),
        method: "all words modulo every u·ρ_v·w",
    }
}

/// `dim (e_i Λ e_i)ⁿ`.
pub fn oracle_cyclic_dim(
    vertices: usize,
    arrows: &[(usize, usize)],
    n: usize,
    i: usize,
    field: FieldSpec,
) -> OracleResult {
    let q = Double::new(vertices, arrows);
    let words: Vec<Word> = q
        .words(n)
        .into_iter()
        .filter(|w| w.head == i && w.tail == i)
        .collect();
    let index = index_of(&words);
    let mut span = Span::new(field);
    q.ideal(n, &index, field, &mut span);
    OracleResult {
        quantity: "dim (e_i Λ e_i)^n",
        parameters: format!("{vertices} vertices, {arrows:?}, n = {n}, i = {i}, {field}"),
        value: words.len() - span.rank(),
        method: "cycles at i modulo the ideal",
    }
}

/// `dim (Λ/[Λ, Λ])ⁿ`: words modulo the ideal and every `uw − wu`.
pub fn oracle_trace_dim(
    vertices: usize,
    arrows: &[(usize, usize)],
    n: usize,
    field: FieldSpec,
) -> OracleResult {
    let q = Double::new(vertices, arrows);
    let words = q.words(n);
    let index = index_of(&words);
    let mut span = Span::new(field);
    q.ideal(n, &index, field, &mut span);
    for i in 0..=n {
        let (us, ws) = (q.words(i), q.words(n - i));
        for u in &us {
            for w in &ws {
                let uw = q.mul(u, w).map(|p| (index[&p], 1));
                let wu = q.mul(w, u).map(|p| (index[&p], -1));
                span.insert(vector(field, uw.into_iter().chain(wu)));
            }
        }
    }
    OracleResult {
        quantity: "dim trace^n",
        parameters: format!("{vertices} vertices, {arrows:?}, n = {n}, {field}"),
        value: words.len() - span.rank(),
        method: "words modulo the ideal and all commutators of words",
    }
}

/// A graded algebra given by structure constants.
pub struct Algebra {
    field: FieldSpec,
    degree: Vec<usize>,
    table: Vec<Vec<Vector>>,
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut out = vec![0; 3];
        for &d in &self.degree {
            out[d] += 1;
        }
        out
    }
}

/// `Z(Γ)` as `𝕜Γ̄` modulo paths of length 3, non-backtracking paths of length
/// 2, and differences of 2-cycles at a vertex; `𝕜[x]/(x²)` with `|x| = 2` for
/// a single vertex.
pub fn oracle_zigzag(vertices: usize, edges: &[(usize, usize)], field: FieldSpec) -> Algebra {
    if edges.is_empty() {
        assert_eq!(vertices, 1, "graph must be connected");
        let one = vector(field, [(0, 1)]);
        let x = vector(field, [(1, 1)]);
        return Algebra {
            field,
            degree: vec![0, 2],
            table: vec![vec![one, x.clone()], vec![x, Vector::new()]],
        };
    }
    let q = Double::new(vertices, edges);
    let two = q.words(2);
    let index = index_of(&two);
    let mut rel = Span::new(field);
    for v in 0..vertices {
        let cycles: Vec<usize> = two
            .iter()
            .filter(|w| w.head == v && w.tail == v)
            .map(|w| index[w])
            .collect();
        for pair in cycles.windows(2) {
            rel.insert(vector(field, [(pair[0], 1), (pair[1], -1)]));
        }
    }
    for w in two.iter().filter(|w| w.head != w.tail) {
        rel.insert(vector(field, [(index[w], 1)]));
    }
    let mut basis: Vec<Word> = (0..vertices).map(|v| q.idempotent(v)).collect();
    basis.extend((0..q.ends.len()).map(|x| q.letter(x)));
    let free: Vec<usize> = (0..two.len())
        .filter(|k| !rel.rows.contains_key(k))
        .collect();
    basis.extend(free.iter().map(|&k| two[k].clone()));
    let position: HashMap<Word, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let degree: Vec<usize> = basis.iter().map(|w| w.arrows.len()).collect();

    let normal = |w: &Word| -> Vector {
        match w.arrows.len() {
            0 | 1 => vector(field, [(position[w], 1)]),
            2 => rel
                .reduce(vector(field, [(index[w], 1)]))
                .into_iter()
                .map(|(k, c)| (position[&two[k]], c))
                .collect(),
            _ => Vector::new(),
        }
    };
    let table = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| q.mul(a, b).map(|p| normal(&p)).unwrap_or_default())
                .collect()
        })
        .collect();
    Algebra {
        field,
        degree,
        table,
    }
}

/// All `k`-tuples of basis indices whose image under a map of Adams degree `q`
/// has degree in `0..=2`.
fn tuples(alg: &Algebra, k: usize, q: i64) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| (0..alg.dim()).map(move |b| [t.clone(), vec![b]].concat()))
            .filter(|t| t.iter().map(|&b| alg.degree[b]).sum::<usize>() as i64 - q <= 2)
            .collect();
    }
    out.retain(|t| t.iter().map(|&b| alg.degree[b]).sum::<usize>() as i64 - q >= 0);
    out
}

/// `tuples(alg, k, q).len()` without building them.
fn tuple_count(alg: &Algebra, k: usize, q: i64) -> usize {
    let top = (q + 2).max(-1);
    if top < 0 {
        return 0;
    }
    let top = top as usize;
    // ways[d] = number of tuples so far with degree sum d ≤ top
    let mut ways = vec![0usize; top + 1];
    ways[0] = 1;
    for _ in 0..k {
        let mut next = vec![0usize; top + 1];
        for (d, &w) in ways.iter().enumerate() {
            for &b in &alg.degree {
                if d + b <= top {
                    next[d + b] = next[d + b].saturating_add(w);
                }
            }
        }
        ways = next;
    }
    ways.iter().skip(q.max(0) as usize).sum()
}

const TUPLE_LIMIT: usize = 200_000;

/// Rank of `δ: C^{p,q} → C^{p+1,q}` in the unreduced, unnormalized complex
/// over the ground field, arity `k = p + q`.
fn unreduced_rank(alg: &Algebra, k: usize, q: i64) -> Result<usize, String> {
    let field = alg.field;
    let deg = |t: &[usize]| t.iter().map(|&b| alg.degree[b]).sum::<usize>() as i64;
    let outputs = |t: &[usize]| -> Vec<usize> {
        (0..alg.dim())
            .filter(|&b| alg.degree[b] as i64 == deg(t) - q)
            .collect()
    };
    let count = tuple_count(alg, k + 1, q);
    if count > TUPLE_LIMIT {
        return Err(format!(
            "{count} tuples of arity {} exceed the oracle limit",
            k + 1
        ));
    }
    let domain = tuples(alg, k, q);
    let codomain = tuples(alg, k + 1, q);
    let mut column = HashMap::new();
    for t in &domain {
        for b in outputs(t) {
            let next = column.len();
            column.insert((t.clone(), b), next);
        }
    }
    let mut span = Span::new(field);
    // one row per (s, output coordinate c); entries indexed by columns (t, b)
    for s in &codomain {
        let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        let mut add = |c: usize, col: usize, x: Scalar| {
            let e = rows
                .entry(c)
                .or_default()
                .entry(col)
                .or_insert_with(|| field.zero());
            *e = e.clone() + x;
        };
        let koszul = if (alg.degree[s[0]] as i64 * q) % 2 == 0 {
            1
        } else {
            -1
        };
        for b in outputs(&s[1..]) {
            for (c, x) in &alg.table[s[0]][b] {
                add(
                    *c,
                    column[&(s[1..].to_vec(), b)],
                    x.clone() * field.from_i64(koszul),
                );
            }
        }
        for j in 0..k {
            let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
            for (m, x) in &alg.table[s[j]][s[j + 1]] {
                let t: Vec<usize> = s[..j]
                    .iter()
                    .chain([m])
                    .chain(&s[j + 2..])
                    .copied()
                    .collect();
                for b in outputs(&t) {
                    add(b, column[&(t.clone(), b)], x.clone() * field.from_i64(sign));
                }
            }
        }
        let last = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
        for b in outputs(&s[..k]) {
            for (c, x) in &alg.table[b][s[k]] {
                add(
                    *c,
                    column[&(s[..k].to_vec(), b)],
                    x.clone() * field.from_i64(last),
                );
            }
        }
        for (_, mut row) in rows {
            row.retain(|_, x| !x.is_zero());
            span.insert(row);
        }
    }
    Ok(span.rank())
}

fn cochain_dim(alg: &Algebra, k: usize, q: i64) -> usize {
    tuples(alg, k, q)
        .iter()
        .map(|t| {
            let d = t.iter().map(|&b| alg.degree[b]).sum::<usize>() as i64 - q;
            alg.degree.iter().filter(|&&x| x as i64 == d).count()
        })
        .sum()
}

/// `dim HH^{p,q}` from the full unreduced cochain complex.
pub fn oracle_hh_unreduced(alg: &Algebra, p: i64, q: i64) -> Result<OracleResult, String> {
    let k = p + q;
    // no cochains of negative arity
    let value = if k < 0 {
        0
    } else {
        let k = k as usize;
        let out = unreduced_rank(alg, k, q)?;
        let into = if k > 0 {
            unreduced_rank(alg, k - 1, q)?
        } else {
            0
        };
        cochain_dim(alg, k, q) - out - into
    };
    Ok(OracleResult {
        quantity: "dim HH^{p,q}",
        parameters: format!("p = {p}, q = {q}, {}", alg.field),
        value,
        method: "unreduced Hochschild complex over the ground field",
    })
}
