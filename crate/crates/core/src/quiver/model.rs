use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: Option<u32>,
}

/// Finite quiver with named vertices and arrows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateName {
                    line: 0,
                    kind: "vertex",
                    name: v.clone(),
                });
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::DuplicateName {
                    line: 0,
                    kind: "arrow",
                    name: a.name.clone(),
                });
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidArgument(format!(
                    "arrow `{}` has an endpoint outside the vertex list",
                    a.name
                )));
            }
            if a.degree == Some(0) {
                return Err(Error::InvalidArgument(format!(
                    "arrow `{}` has degree 0; degrees must be positive",
                    a.name
                )));
            }
        }
        let graded = arrows.iter().filter(|a| a.degree.is_some()).count();
        if graded != 0 && graded != arrows.len() {
            let missing = arrows.iter().find(|a| a.degree.is_none()).expect("some ungraded arrow");
            return Err(Error::PartialDegrees {
                arrow: missing.name.clone(),
            });
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_graded(&self) -> bool {
        self.arrows.first().is_some_and(|a| a.degree.is_some())
    }

    /// Weight of an arrow: its degree, or 1 (path length) if ungraded.
    pub fn weight(&self, arrow: usize) -> u32 {
        self.arrows[arrow].degree.unwrap_or(1)
    }

    pub fn path_weight(&self, p: &Path, degrees: bool) -> u32 {
        p.arrows
            .iter()
            .map(|&a| if degrees { self.weight(a) } else { 1 })
            .sum()
    }

    pub fn stationary(&self, vertex: usize) -> Path {
        Path::stationary(vertex)
    }

    pub fn arrow_path(&self, arrow: usize) -> Path {
        let a = &self.arrows[arrow];
        Path {
            start: a.source,
            end: a.target,
            arrows: vec![arrow],
        }
    }

    /// Builds a path from arrows listed in traversal order.
    pub fn path_from_traversal(&self, arrows: Vec<usize>) -> Result<Path> {
        let mut iter = arrows.iter();
        let Some(&first) = iter.next() else {
            return Err(Error::InvalidArgument("empty arrow list".into()));
        };
        let mut end = self.arrows[first].target;
        for &a in iter {
            if self.arrows[a].source != end {
                return Err(Error::EndpointMismatch(format!(
                    "arrow `{}` starts at `{}`, not at `{}`",
                    self.arrows[a].name,
                    self.vertices[self.arrows[a].source],
                    self.vertices[end]
                )));
            }
            end = self.arrows[a].target;
        }
        Ok(Path {
            start: self.arrows[first].source,
            end,
            arrows,
        })
    }

    /// Renders a path in function order, `b*a` for "a then b".
    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.start]);
        }
        p.arrows
            .iter()
            .rev()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A path, stored with its arrows in traversal order (first arrow first).
/// Written in function order it reads `a_n ... a_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(vertex: usize) -> Self {
        Path {
            start: vertex,
            end: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// `later ∘ earlier`: traverse `earlier`, then `later`.
pub fn compose(later: &Path, earlier: &Path) -> Result<Path> {
    if later.start != earlier.end {
        return Err(Error::EndpointMismatch(format!(
            "path ending at vertex {} cannot be followed by a path starting at vertex {}",
            earlier.end, later.start
        )));
    }
    let mut arrows = earlier.arrows.clone();
    arrows.extend_from_slice(&later.arrows);
    Ok(Path {
        start: earlier.start,
        end: later.end,
        arrows,
    })
}

/// All paths of length at most `max_length`, ordered by length and then
/// lexicographically by arrow indices in traversal order.
pub fn enumerate_paths(q: &Quiver, max_length: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::stationary).collect();
    let mut frontier = out.clone();
    for _ in 0..max_length {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.source == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        start: p.start,
                        end: a.target,
                        arrows,
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.arrows.cmp(&b.arrows));
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationExpr {
    #[serde(serialize_with = "serialize_terms")]
    pub terms: Vec<(Scalar, Path)>,
}

fn serialize_terms<S: serde::Serializer>(
    terms: &[(Scalar, Path)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<(String, &Path)> = terms.iter().map(|(c, p)| (c.to_string(), p)).collect();
    v.serialize(s)
}

impl RelationExpr {
    /// Checks the relation invariants; `line` is used for diagnostics.
    pub fn validate(&self, q: &Quiver, line: usize) -> Result<()> {
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::Syntax {
                line,
                column: 1,
                message: "empty relation".into(),
            });
        };
        let mut seen = HashSet::new();
        for (c, p) in &self.terms {
            if c.is_zero() {
                return Err(Error::Syntax {
                    line,
                    column: 1,
                    message: format!("zero coefficient on `{}`", q.path_name(p)),
                });
            }
            if p.len() < 2 {
                return Err(Error::Admissibility {
                    line,
                    path: q.path_name(p),
                    length: p.len(),
                });
            }
            if p.start != first.start || p.end != first.end {
                return Err(Error::NonParallel {
                    line,
                    detail: format!(
                        "`{}` runs {} -> {} but `{}` runs {} -> {}",
                        q.path_name(first),
                        q.vertices()[first.start],
                        q.vertices()[first.end],
                        q.path_name(p),
                        q.vertices()[p.start],
                        q.vertices()[p.end]
                    ),
                });
            }
            if !seen.insert(&p.arrows) {
                return Err(Error::DuplicateTerm {
                    line,
                    path: q.path_name(p),
                });
            }
        }
        Ok(())
    }

    pub fn start(&self) -> usize {
        self.terms[0].1.start
    }

    pub fn end(&self) -> usize {
        self.terms[0].1.end
    }

    /// Weight of every term, if they all agree.
    pub fn homogeneous_weight(&self, q: &Quiver, degrees: bool) -> Option<u32> {
        let w = q.path_weight(&self.terms.first()?.1, degrees);
        self.terms
            .iter()
            .all(|(_, p)| q.path_weight(p, degrees) == w)
            .then_some(w)
    }

    pub fn render(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if let Some(m) = mag {
                s.push_str(&m);
                s.push('*');
            }
            s.push_str(&q.path_name(p));
        }
        s
    }
}

/// Sign and magnitude text (None for magnitude one).
fn split_sign(c: &Scalar) -> (bool, Option<String>) {
    match c {
        Scalar::Rational(r) => {
            let neg = r < &num_rational::BigRational::from_integer(0.into());
            let mag = if neg { -r.clone() } else { r.clone() };
            let text = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            (neg, (text != "1").then_some(text))
        }
        Scalar::Residue { value, .. } => (false, (*value != 1).then(|| value.to_string())),
    }
}

/// A quiver with relations over a field: the data of `kQ/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub quiver: Quiver,
    pub field: Field,
    pub relations: Vec<RelationExpr>,
    pub nilpotency_bound: Option<usize>,
}

impl Presentation {
    pub fn new(
        quiver: Quiver,
        field: Field,
        relations: Vec<RelationExpr>,
        nilpotency_bound: Option<usize>,
    ) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            r.validate(&quiver, i + 1)?;
            if let Some((c, _)) = r.terms.iter().find(|(c, _)| c.field() != field) {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: c.field().to_string(),
                });
            }
        }
        if nilpotency_bound == Some(0) {
            return Err(Error::InvalidArgument("nilpotency bound must be positive".into()));
        }
        Ok(Presentation {
            quiver,
            field,
            relations,
            nilpotency_bound,
        })
    }
}

impl fmt::Display for Presentation {
    /// Serializes to the line-oriented presentation format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "vertices {}", self.quiver.vertices().join(" "))?;
        for a in self.quiver.arrows() {
            write!(
                f,
                "arrow {} : {} -> {}",
                a.name,
                self.quiver.vertices()[a.source],
                self.quiver.vertices()[a.target]
            )?;
            if let Some(d) = a.degree {
                write!(f, " deg {d}")?;
            }
            writeln!(f)?;
        }
        for r in &self.relations {
            writeln!(f, "relation {}", r.render(&self.quiver))?;
        }
        if let Some(n) = self.nilpotency_bound {
            writeln!(f, "nilpotency_bound {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(name: &str, s: usize, t: usize) -> Arrow {
        Arrow {
            name: name.into(),
            source: s,
            target: t,
            degree: None,
        }
    }

    fn five_vertex_quiver() -> Quiver {
        let v = ["1", "2", "3", "4", "5"].map(String::from).to_vec();
        Quiver::new(
            v,
            vec![
                arrow("α", 0, 1),
                arrow("β", 1, 2),
                arrow("γ", 0, 3),
                arrow("δ", 3, 4),
                arrow("ε", 4, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn compose_examples() {
        let q = five_vertex_quiver();
        let ba = compose(&q.arrow_path(1), &q.arrow_path(0)).unwrap();
        assert_eq!((ba.start, ba.end, ba.len()), (0, 2, 2));
        assert_eq!(q.path_name(&ba), "β*α");
        let e = Path::stationary(3);
        assert_eq!(compose(&e, &e).unwrap(), e);
        assert!(compose(&q.arrow_path(0), &q.arrow_path(1)).is_err());
    }

    #[test]
    fn stationary_paths_are_neutral() {
        let q = five_vertex_quiver();
        let a = q.arrow_path(0);
        assert_eq!(compose(&a, &Path::stationary(0)).unwrap(), a);
        assert_eq!(compose(&Path::stationary(1), &a).unwrap(), a);
    }

    #[test]
    fn enumerate_examples() {
        let single = Quiver::new(vec!["v".into()], vec![]).unwrap();
        assert_eq!(enumerate_paths(&single, 3), vec![Path::stationary(0)]);

        let looped = Quiver::new(vec!["v".into()], vec![arrow("x", 0, 0)]).unwrap();
        let paths = enumerate_paths(&looped, 2);
        assert_eq!(paths.len(), 3);
        assert_eq!(paths[2].arrows, vec![0, 0]);

        let paths = enumerate_paths(&five_vertex_quiver(), 3);
        assert_eq!(paths.len(), 14);
        let names: Vec<String> = paths.iter().map(|p| five_vertex_quiver().path_name(p)).collect();
        assert_eq!(&names[10..], &["β*α", "δ*γ", "ε*δ", "ε*δ*γ"]);
    }

    #[test]
    fn enumeration_closed_under_subpaths() {
        let q = five_vertex_quiver();
        let paths = enumerate_paths(&q, 4);
        let set: HashSet<_> = paths.iter().cloned().collect();
        assert_eq!(set.len(), paths.len());
        for p in &paths {
            for k in 1..p.len() {
                assert!(set.contains(&q.path_from_traversal(p.arrows[..k].to_vec()).unwrap()));
                assert!(set.contains(&q.path_from_traversal(p.arrows[k..].to_vec()).unwrap()));
            }
        }
    }

    #[test]
    fn quiver_invariants() {
        let v = vec!["a".to_string(), "a".to_string()];
        assert!(Quiver::new(v, vec![]).is_err());
        let mut g = arrow("x", 0, 0);
        g.degree = Some(2);
        let err = Quiver::new(vec!["v".into()], vec![g, arrow("y", 0, 0)]).unwrap_err();
        assert!(matches!(err, Error::PartialDegrees { .. }));
    }
}
