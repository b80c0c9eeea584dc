//! Paths and bigraded linear combinations of paths in doubled and Ginzburg quivers.
//!
//! Composition is left to right: `pq` traverses `p` and then `q`, and is zero
//! unless `target(p) = source(q)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};
use crate::quiver::{DoubledQuiver, GinzburgQuiver, Letter};

/// A path: either the idempotent `eᵢ` (no letters) or a composable word of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    letters: Vec<Letter>,
    loops: usize,
}

impl Path {
    pub fn idempotent(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            letters: Vec::new(),
            loops: 0,
        }
    }

    /// Validates composability against the Ginzburg quiver.
    pub fn new(quiver: &GinzburgQuiver, letters: Vec<Letter>) -> Result<Path> {
        let Some(&first) = letters.first() else {
            return Err(Error::InvalidArgument(
                "use Path::idempotent for length 0".into(),
            ));
        };
        if letters.iter().any(|&l| l as usize >= quiver.letter_count()) {
            return Err(Error::InvalidArgument("letter out of range".into()));
        }
        for w in letters.windows(2) {
            if quiver.target(w[0]) != quiver.source(w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "{} and {} are not composable",
                    quiver.letter_name(w[0]),
                    quiver.letter_name(w[1])
                )));
            }
        }
        Ok(Path {
            source: quiver.source(first),
            target: quiver.target(*letters.last().unwrap()),
            loops: letters.iter().filter(|&&l| quiver.is_loop(l)).count(),
            letters,
        })
    }

    /// Parses whitespace-separated letter names (`a1 a2* t3`) or `e<i>`.
    pub fn parse(quiver: &GinzburgQuiver, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix('e') {
            if let Ok(v) = v.parse::<usize>() {
                if v >= 1 && v <= quiver.vertex_count() {
                    return Ok(Path::idempotent(v - 1));
                }
            }
        }
        let letters = text
            .split_whitespace()
            .map(|w| quiver.parse_letter(w))
            .collect::<Result<Vec<_>>>()?;
        Path::new(quiver, letters)
    }

    /// Builds a path without validation; callers guarantee composability.
    pub(crate) fn from_parts(
        source: usize,
        target: usize,
        letters: Vec<Letter>,
        loops: usize,
    ) -> Path {
        Path {
            source,
            target,
            letters,
            loops,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn loop_count(&self) -> usize {
        self.loops
    }

    pub fn arrow_count(&self) -> usize {
        self.letters.len() - self.loops
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// `(-loops, arrows + 2·loops)`.
    pub fn bidegree(&self) -> (i64, i64) {
        let l = self.loops as i64;
        (-l, self.arrow_count() as i64 + 2 * l)
    }

    /// Concatenation, `None` when not composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Some(Path {
            source: self.source,
            target: other.target,
            letters,
            loops: self.loops + other.loops,
        })
    }

    /// Sub-path of letters `range`; an empty range gives the idempotent at the cut point.
    pub fn slice(&self, quiver: &GinzburgQuiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 {
                self.source
            } else {
                quiver.target(self.letters[start - 1])
            };
            return Path::idempotent(v);
        }
        let letters = self.letters[start..end].to_vec();
        Path {
            source: quiver.source(letters[0]),
            target: quiver.target(*letters.last().unwrap()),
            loops: letters.iter().filter(|&&l| quiver.is_loop(l)).count(),
            letters,
        }
    }

    pub fn display(&self, quiver: &GinzburgQuiver) -> String {
        if self.letters.is_empty() {
            return format!("e{}", self.source + 1);
        }
        self.letters
            .iter()
            .map(|&l| quiver.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Lexicographic in letter ids; idempotents first, ordered by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .cmp(&other.letters)
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedElement {
    field: FieldSpec,
    terms: BTreeMap<Path, Scalar>,
}

impl BigradedElement {
    pub fn zero(field: FieldSpec) -> Self {
        BigradedElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(field: FieldSpec, p: Path) -> Self {
        Self::from_terms(field, [(p, field.one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, Scalar)>>(field: FieldSpec, terms: I) -> Self {
        let mut e = Self::zero(field);
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn from_int_terms<I: IntoIterator<Item = (Path, i64)>>(field: FieldSpec, terms: I) -> Self {
        Self::from_terms(
            field,
            terms.into_iter().map(|(p, c)| (p, field.from_i64(c))),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Path, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms
            .get(p)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        assert!(
            self.field.contains(&c),
            "coefficient from a different field"
        );
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The common bidegree of all terms, if there is one. `None` for zero.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(Path::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(
            self.field,
            self.terms
                .iter()
                .map(|(p, v)| (p.clone(), v.clone() * c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-self.field.one()))
    }

    /// Bilinear extension of concatenation.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Self::zero(self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(pq, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// `ab - ba`, with no Koszul sign.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    pub fn display(&self, quiver: &GinzburgQuiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative_rational() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}·"));
            }
            out.push_str(&p.display(quiver));
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "e{}", self.source + 1)
        } else {
            write!(f, "{:?}", self.letters)
        }
    }
}

/// Depth-first enumeration of words starting at `v` with prescribed numbers
/// of remaining arrows and loops. Output is appended in lexicographic order.
#[allow(clippy::too_many_arguments)]
fn extend_words(
    quiver: &GinzburgQuiver,
    v: usize,
    arrows_left: usize,
    loops_left: usize,
    prefix: &mut Vec<Letter>,
    loops_used: usize,
    start: usize,
    out: &mut Vec<Path>,
) {
    if arrows_left == 0 && loops_left == 0 {
        out.push(Path::from_parts(start, v, prefix.clone(), loops_used));
        return;
    }
    for &l in quiver.out_letters(v) {
        let is_loop = quiver.is_loop(l);
        if (is_loop && loops_left == 0) || (!is_loop && arrows_left == 0) {
            continue;
        }
        prefix.push(l);
        extend_words(
            quiver,
            quiver.target(l),
            arrows_left - usize::from(!is_loop),
            loops_left - usize::from(is_loop),
            prefix,
            loops_used + usize::from(is_loop),
            start,
            out,
        );
        prefix.pop();
    }
}

/// All Ginzburg words with exactly `-p` loops and `q + 2p` doubled arrows, sorted.
pub fn basis_of_bidegree(quiver: &GinzburgQuiver, p: i64, q: i64) -> Vec<Path> {
    if p > 0 {
        return Vec::new();
    }
    let loops = -p;
    let arrows = q + 2 * p;
    if arrows < 0 {
        return Vec::new();
    }
    let (loops, arrows) = (loops as usize, arrows as usize);
    let mut out = Vec::new();
    if loops == 0 && arrows == 0 {
        out.extend((0..quiver.vertex_count()).map(Path::idempotent));
        return out;
    }
    let mut prefix = Vec::new();
    for v in 0..quiver.vertex_count() {
        extend_words(quiver, v, arrows, loops, &mut prefix, 0, v, &mut out);
    }
    out.sort();
    out
}

/// Ginzburg words from `i` to `j` with the given arrow and loop counts, sorted.
pub fn words_between(
    quiver: &GinzburgQuiver,
    i: usize,
    j: usize,
    arrows: usize,
    loops: usize,
) -> Vec<Path> {
    if arrows == 0 && loops == 0 {
        return if i == j {
            vec![Path::idempotent(i)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    extend_words(quiver, i, arrows, loops, &mut Vec::new(), 0, i, &mut out);
    out.retain(|p| p.target() == j);
    out.sort();
    out
}

/// All length-`n` paths in the doubled quiver from `i` to `j`, sorted.
pub fn paths_between(quiver: &DoubledQuiver, i: usize, j: usize, n: usize) -> Vec<Path> {
    if n == 0 {
        return if i == j {
            vec![Path::idempotent(i)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    fn go(
        q: &DoubledQuiver,
        v: usize,
        left: usize,
        j: usize,
        start: usize,
        prefix: &mut Vec<Letter>,
        out: &mut Vec<Path>,
    ) {
        if left == 0 {
            if v == j {
                out.push(Path::from_parts(start, v, prefix.clone(), 0));
            }
            return;
        }
        for &a in q.out_arrows(v) {
            prefix.push(a);
            go(q, q.target(a), left - 1, j, start, prefix, out);
            prefix.pop();
        }
    }
    go(quiver, i, n, j, i, &mut prefix, &mut out);
    out
}

/// All length-`n` paths in the doubled quiver, sorted.
pub fn paths_of_length(quiver: &DoubledQuiver, n: usize) -> Vec<Path> {
    let v = quiver.vertex_count();
    let mut out: Vec<Path> = (0..v)
        .flat_map(|i| (0..v).flat_map(move |j| paths_between(quiver, i, j, n)))
        .collect();
    out.sort();
    out
}

/// All length-`n` cycles based at `i` in the doubled quiver, sorted.
pub fn cycles_at(quiver: &DoubledQuiver, i: usize, n: usize) -> Vec<Path> {
    paths_between(quiver, i, i, n)
}
