//! Edge colorings recording which edges are forced planar, forced crossed or undetermined.

use std::collections::BTreeMap;
use std::fmt;

use bpr_graph::{crossable_edges_by, Edge, Graph, Kite};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Red,
    Blue,
    Orange,
    Cyan,
    Grey,
}

impl Color {
    pub const ALL: [Color; 6] = [Color::Black, Color::Red, Color::Blue, Color::Orange, Color::Cyan, Color::Grey];

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Orange => "orange",
            Color::Cyan => "cyan",
            Color::Grey => "grey",
        }
    }

    /// Edges that stay in the working graph with this color are drawn uncrossed.
    pub fn treated_planar(self) -> bool {
        matches!(self, Color::Black | Color::Blue | Color::Cyan)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("edge {edge} is {existing}, cannot recolor {requested}")]
    Conflict { edge: Edge, existing: Color, requested: Color },
    #[error("edge {0} is already colored")]
    Colored(Edge),
}

/// Partial map edge → color; absent edges are uncolored. Serializes as a map
/// "u-v" → color name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BTreeMap<String, Color>", try_from = "BTreeMap<String, Color>")]
pub struct EdgeColoring {
    colors: BTreeMap<Edge, Color>,
}

impl EdgeColoring {
    pub fn new() -> EdgeColoring {
        EdgeColoring::default()
    }

    pub fn get(&self, e: Edge) -> Option<Color> {
        self.colors.get(&e).copied()
    }

    pub fn is_uncolored(&self, e: Edge) -> bool {
        !self.colors.contains_key(&e)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Color)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    pub fn edges_with(&self, c: Color) -> Vec<Edge> {
        self.iter().filter(|&(_, x)| x == c).map(|(e, _)| e).collect()
    }

    /// Colors `e` with `c`: blue and cyan survive black/grey requests, equal
    /// colors are a no-op, anything else that disagrees is a conflict.
    pub fn extend(&mut self, e: Edge, c: Color) -> Result<(), ColoringError> {
        match self.colors.get(&e) {
            None => {
                self.colors.insert(e, c);
                Ok(())
            }
            Some(&old) if old == c => Ok(()),
            Some(&old)
                if matches!(old, Color::Blue | Color::Cyan) && matches!(c, Color::Black | Color::Grey) =>
            {
                Ok(())
            }
            Some(&old) => Err(ColoringError::Conflict { edge: e, existing: old, requested: c }),
        }
    }

    /// Functional form of [`EdgeColoring::extend`].
    pub fn extended(&self, e: Edge, c: Color) -> Result<EdgeColoring, ColoringError> {
        let mut out = self.clone();
        out.extend(e, c)?;
        Ok(out)
    }

    /// First crossing edge red, second blue, boundary black.
    pub fn color_kite(&mut self, kite: &Kite) -> Result<(), ColoringError> {
        self.extend(kite.crossing.0, Color::Red)?;
        self.extend(kite.crossing.1, Color::Blue)?;
        for &b in &kite.boundary {
            self.extend(b, Color::Black)?;
        }
        Ok(())
    }

    /// C[a,b]: uncolored edges {x,y} with {a,b,x,y} inducing a K4.
    pub fn crossable_edges(&self, g: &Graph, e: Edge) -> Result<Vec<Edge>, ColoringError> {
        if !self.is_uncolored(e) {
            return Err(ColoringError::Colored(e));
        }
        Ok(crossable_edges_by(g, e, |f| self.is_uncolored(f)))
    }

    /// JSON-friendly view: "u-v" → color name.
    pub fn to_named_map(&self) -> BTreeMap<String, String> {
        self.iter().map(|(e, c)| (e.to_string(), c.name().to_string())).collect()
    }
}

impl From<EdgeColoring> for BTreeMap<String, Color> {
    fn from(c: EdgeColoring) -> Self {
        c.colors.into_iter().map(|(e, c)| (e.to_string(), c)).collect()
    }
}

impl TryFrom<BTreeMap<String, Color>> for EdgeColoring {
    type Error = String;

    fn try_from(m: BTreeMap<String, Color>) -> Result<Self, Self::Error> {
        let mut colors = BTreeMap::new();
        for (k, c) in m {
            let (a, b) = k.split_once('-').ok_or_else(|| format!("bad edge key {k:?}"))?;
            let a: usize = a.parse().map_err(|_| format!("bad edge key {k:?}"))?;
            let b: usize = b.parse().map_err(|_| format!("bad edge key {k:?}"))?;
            let e = Edge::try_new(a, b).map_err(|e| e.to_string())?;
            colors.insert(e, c);
        }
        Ok(EdgeColoring { colors })
    }
}
