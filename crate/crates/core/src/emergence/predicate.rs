//! The emergence test: a property is emergent for a collection when an
//! observer finds it on the aggregate but on none of the individual
//! components that make it up.

use serde::{Deserialize, Serialize};

use super::clusters::Cluster;
use crate::engine::{Grid, Position};

/// Three-valued observation. `Undefined` means the property does not apply
/// at that level (a single atom has no temperature).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truth {
    True,
    False,
    Undefined,
}

impl Truth {
    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn is_defined(self) -> bool {
        self != Truth::Undefined
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

/// Which level a property is naturally phrased at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arity {
    /// Meaningful on a single cell; must return a defined value there.
    Component,
    /// Meaningful only on the cluster collection.
    Collection,
}

type AggregateFn<'a, T, L> = Box<dyn Fn(&Grid<T>, &[Cluster<L>]) -> Truth + 'a>;
type ComponentFn<'a, T> = Box<dyn Fn(&Grid<T>, Position) -> Truth + 'a>;

/// An observational mechanism: evaluates one named property on the
/// aggregate and on individual components.
pub struct PropertyEvaluator<'a, T, L> {
    pub name: String,
    pub arity: Arity,
    aggregate: AggregateFn<'a, T, L>,
    component: ComponentFn<'a, T>,
}

impl<'a, T, L> PropertyEvaluator<'a, T, L> {
    pub fn new(
        name: impl Into<String>,
        arity: Arity,
        aggregate: impl Fn(&Grid<T>, &[Cluster<L>]) -> Truth + 'a,
        component: impl Fn(&Grid<T>, Position) -> Truth + 'a,
    ) -> Self {
        PropertyEvaluator {
            name: name.into(),
            arity,
            aggregate: Box::new(aggregate),
            component: Box::new(component),
        }
    }

    pub fn on_aggregate(&self, world: &Grid<T>, clusters: &[Cluster<L>]) -> Truth {
        (self.aggregate)(world, clusters)
    }

    pub fn on_component(&self, world: &Grid<T>, pos: Position) -> Truth {
        let t = (self.component)(world, pos);
        debug_assert!(
            self.arity != Arity::Component || t.is_defined(),
            "component-level property `{}` undefined at {pos}",
            self.name
        );
        t
    }
}

impl<'a, T, L: PartialEq + 'a> PropertyEvaluator<'a, T, L> {
    /// "contains at least `count` monochrome clusters of size at least `min_size`".
    ///
    /// Undefined on a single cell.
    pub fn monochrome_clusters(count: usize, min_size: usize) -> Self {
        PropertyEvaluator::new(
            format!("contains >= {count} monochrome clusters of size >= {min_size}"),
            Arity::Collection,
            move |_, clusters| {
                (clusters.iter().filter(|c| c.size() >= min_size).count() >= count).into()
            },
            |_, _| Truth::Undefined,
        )
    }

    /// "cell is `<label>`": true on a cell whose label (via `kind`) matches.
    ///
    /// On the aggregate it holds when every clustered cell carries the label.
    pub fn cell_is(name: impl Into<String>, label: L, kind: impl Fn(&T) -> Option<L> + 'a) -> Self
    where
        L: Clone,
    {
        let agg_label = label.clone();
        PropertyEvaluator::new(
            name,
            Arity::Component,
            move |_, clusters| {
                (!clusters.is_empty() && clusters.iter().all(|c| c.label == agg_label)).into()
            },
            move |world, pos| (kind(world.get(pos)).as_ref() == Some(&label)).into(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmergenceVerdict {
    pub property: String,
    pub holds_on_aggregate: bool,
    pub defined_on_any_component: bool,
    pub holds_on_any_component: bool,
    pub emergent: bool,
}

/// Evaluates `evaluator` on the cluster collection and on every cell that
/// belongs to a cluster. Emergent iff true on the aggregate and true on no
/// component; undefined counts as not true.
pub fn emergence_test<T, L>(
    evaluator: &PropertyEvaluator<'_, T, L>,
    world: &Grid<T>,
    clusters: &[Cluster<L>],
) -> EmergenceVerdict {
    let holds_on_aggregate = evaluator.on_aggregate(world, clusters).is_true();
    let mut defined_on_any_component = false;
    let mut holds_on_any_component = false;
    for pos in clusters.iter().flat_map(|c| c.members.iter().copied()) {
        let t = evaluator.on_component(world, pos);
        defined_on_any_component |= t.is_defined();
        holds_on_any_component |= t.is_true();
    }
    EmergenceVerdict {
        property: evaluator.name.clone(),
        holds_on_aggregate,
        defined_on_any_component,
        holds_on_any_component,
        emergent: holds_on_aggregate && !holds_on_any_component,
    }
}
