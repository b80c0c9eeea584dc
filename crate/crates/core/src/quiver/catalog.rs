use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Dynkin type of a tree whose underlying graph is ADE.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    /// Characteristics in which the trace space of the preprojective algebra
    /// fails to vanish in positive degree.
    pub fn bad_characteristics(&self) -> &'static [u64] {
        match self {
            DynkinType::A(_) => &[],
            DynkinType::D(_) => &[2],
            DynkinType::E(6) | DynkinType::E(7) => &[2, 3],
            DynkinType::E(_) => &[2, 3, 5],
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Star-shaped tree: each arm is numbered from its far end inwards, arms in the
/// given order, and the branch vertex gets the highest index.
fn star(arms: &[usize], name: String) -> Graph {
    let n = arms.iter().sum::<usize>() + 1;
    let center = n - 1;
    let mut edges = Vec::new();
    let mut next = 0;
    for &len in arms {
        for k in 0..len {
            let v = next + k;
            let w = if k + 1 == len { center } else { v + 1 };
            edges.push((v, w));
        }
        next += len;
    }
    Graph::new(n, edges, Some(name)).expect("catalog graphs are valid")
}

/// Standard ADE and extended ADE graphs.
///
/// Indexing: `A_n` is the path `1 - 2 - ... - n`; `Ã_n` the cycle on `n + 1`
/// vertices. Star-shaped graphs (`D_n`, `E_n`, `D̃₄`, `Ẽ_n`) number each arm from
/// its far end inwards and give the branch vertex the highest index, so `D̃₄`
/// has leaves 1..4 and center 5. `D̃_n` for `n ≥ 5` has leaves 1, 2 on vertex 5
/// and leaves 3, 4 on vertex `n + 1`, joined by the path `5 - ... - (n + 1)`.
pub fn catalog(family: &str, n: usize) -> Result<Graph> {
    let bad = || Error::UnknownCatalog(format!("{family}{n}"));
    let label = format!("{family}{n}");
    Ok(match family {
        "A" if n >= 1 => Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect(), Some(label))?,
        "D" if n >= 4 => star(&[n - 3, 1, 1], label),
        "E" if (6..=8).contains(&n) => star(&[n - 4, 2, 1], label),
        "A~" if n >= 2 => Graph::new(
            n + 1,
            (0..=n).map(|i| (i, (i + 1) % (n + 1))).collect(),
            Some(label),
        )?,
        "D~" if n == 4 => star(&[1, 1, 1, 1], label),
        "D~" if n >= 5 => {
            let last = n;
            let mut edges = vec![(0, 4), (1, 4), (2, last), (3, last)];
            edges.extend((4..last).map(|v| (v, v + 1)));
            Graph::new(n + 1, edges, Some(label))?
        }
        "E~" if n == 6 => star(&[2, 2, 2], label),
        "E~" if n == 7 => star(&[3, 3, 1], label),
        "E~" if n == 8 => star(&[5, 2, 1], label),
        _ => return Err(bad()),
    })
}

/// Parses labels such as `A5`, `D4`, `E8`, `D~4`, `E~6`.
pub fn parse_label(label: &str) -> Result<Graph> {
    let label = label.trim();
    let split = label
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::UnknownCatalog(label.to_string()))?;
    let (family, digits) = label.split_at(split);
    let n: usize = digits
        .parse()
        .map_err(|_| Error::UnknownCatalog(label.to_string()))?;
    catalog(&family.to_ascii_uppercase(), n)
}

/// Recognizes ADE trees by their arm lengths.
pub(super) fn classify(g: &Graph) -> Option<DynkinType> {
    if !g.is_tree() {
        return None;
    }
    let n = g.vertex_count();
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] if g.degree(*c) == 3 => {
            let mut arms: Vec<usize> = g
                .neighbors(*c)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    loop {
                        let next: Vec<usize> = g
                            .neighbors(cur)
                            .into_iter()
                            .filter(|&w| w != prev)
                            .collect();
                        match next.as_slice() {
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2..=4] => Some(DynkinType::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let a1 = catalog("A", 1).unwrap();
        assert_eq!((a1.vertex_count(), a1.edges().len()), (1, 0));
        let d4 = catalog("D", 4).unwrap();
        assert_eq!((d4.vertex_count(), d4.edges().len()), (4, 3));
        assert_eq!(d4.degree(3), 3);
        let dt4 = catalog("D~", 4).unwrap();
        assert_eq!((dt4.vertex_count(), dt4.edges().len()), (5, 4));
        assert_eq!(dt4.degree(4), 4);
    }

    #[test]
    fn edge_counts() {
        for (fam, n) in [("A", 5), ("D", 6), ("E", 6), ("E", 7), ("E", 8)] {
            let g = catalog(fam, n).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert_eq!(g.edges().len(), n - 1);
            assert!(g.is_tree());
        }
        for (fam, n) in [
            ("A~", 3),
            ("D~", 4),
            ("D~", 6),
            ("E~", 6),
            ("E~", 7),
            ("E~", 8),
        ] {
            let g = catalog(fam, n).unwrap();
            assert_eq!(g.vertex_count(), n + 1);
            assert_eq!(g.edges().len(), g.vertex_count() - usize::from(fam != "A~"));
        }
    }

    #[test]
    fn classification() {
        for (fam, n) in [
            ("A", 1),
            ("A", 4),
            ("D", 4),
            ("D", 7),
            ("E", 6),
            ("E", 7),
            ("E", 8),
        ] {
            let t = catalog(fam, n).unwrap().dynkin_type().unwrap();
            assert_eq!(t.to_string(), format!("{fam}{n}"));
        }
        for (fam, n) in [
            ("A~", 3),
            ("D~", 4),
            ("D~", 5),
            ("E~", 6),
            ("E~", 7),
            ("E~", 8),
        ] {
            assert_eq!(catalog(fam, n).unwrap().dynkin_type(), None);
        }
    }

    #[test]
    fn labels() {
        assert_eq!(parse_label("D~4").unwrap(), catalog("D~", 4).unwrap());
        assert_eq!(parse_label("e6").unwrap(), catalog("E", 6).unwrap());
        assert!(parse_label("E9").is_err());
        assert!(parse_label("X3").is_err());
        assert!(parse_label("D3").is_err());
        assert!(parse_label("A~1").is_err());
    }

    #[test]
    fn bad_characteristics() {
        assert_eq!(DynkinType::A(5).bad_characteristics(), &[] as &[u64]);
        assert_eq!(DynkinType::D(4).bad_characteristics(), &[2]);
        assert_eq!(DynkinType::E(6).bad_characteristics(), &[2, 3]);
        assert_eq!(DynkinType::E(8).bad_characteristics(), &[2, 3, 5]);
    }
}
