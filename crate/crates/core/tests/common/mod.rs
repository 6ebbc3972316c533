#![allow(dead_code)]

use assoclie::algcore::basic::{BasicAlgebra, Inflated, Scrambled};
use assoclie::algcore::StructureAlgebra;
use assoclie::exact::{Field, Subspace};
use assoclie::sdecomp::SemisimpleEmbedding;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Shape of a random inflated instance.
#[derive(Debug, Clone)]
pub struct Shape {
    pub field: Field,
    pub sizes: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    pub incidence: bool,
    pub len: usize,
    pub depth: usize,
    /// Corner of each vertex taken into `S`; `0` leaves the vertex out.
    pub corners: Vec<usize>,
    pub drop: Vec<usize>,
    pub seed: u64,
}

pub struct Instance {
    pub shape: Shape,
    pub inflated: Inflated,
    pub scrambled: Scrambled,
    pub emb: SemisimpleEmbedding,
    pub radical: Subspace,
}

impl Instance {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.scrambled.algebra
    }
}

pub fn build(shape: &Shape) -> Option<Instance> {
    let n = shape.sizes.len();
    let basic = if shape.incidence {
        let pairs: Vec<(usize, usize)> = shape.arrows.iter().map(|&(a, b)| (a.min(b), a.max(b))).filter(|(a, b)| a != b).collect();
        BasicAlgebra::incidence(shape.field, n, &pairs).ok()?
    } else {
        BasicAlgebra::path(shape.field, n, &shape.arrows, shape.len).ok()?
    };
    let basic = basic.tensor_local(shape.depth).ok()?;
    let inflated = basic.inflate(&shape.sizes, &shape.drop).ok()?;
    if inflated.algebra().dim() > 40 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
    let scrambled = inflated.scramble(&mut rng).ok()?;
    let blocks = (0..n)
        .filter(|&v| shape.corners[v] > 0)
        .map(|v| scrambled.map_units(&inflated.corner_units(v, shape.corners[v]).unwrap()))
        .collect();
    let emb = SemisimpleEmbedding::new(&scrambled.algebra, blocks).ok()?;
    let radical = scrambled.map_subspace(&inflated.radical());
    Some(Instance { shape: shape.clone(), inflated, scrambled, emb, radical })
}

pub fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        3 => Just(Field::Rationals),
        1 => Just(Field::prime(2).unwrap()),
        1 => Just(Field::prime(3).unwrap()),
        1 => Just(Field::prime(101).unwrap()),
    ]
}

/// Random shapes; `min_corner` bounds the size of every block of `S`.
pub fn shape_strategy(field: impl Strategy<Value = Field>, min_corner: usize) -> impl Strategy<Value = Shape> {
    (field, 1usize..=3)
        .prop_flat_map(move |(field, n)| {
            let lo = min_corner.max(1);
            (
                Just(field),
                prop::collection::vec(1usize..=3, n),
                prop::collection::vec((0..n, 0..n), 0..=3),
                any::<bool>(),
                1usize..=3,
                1usize..=2,
                prop::collection::vec((any::<bool>(), any::<bool>()), n),
                any::<u64>(),
                Just(lo),
            )
        })
        .prop_map(|(field, mut sizes, arrows, incidence, len, depth, picks, seed, lo)| {
            let mut corners = Vec::new();
            let mut drop = Vec::new();
            for (v, (take, dropped)) in picks.into_iter().enumerate() {
                if take || v == 0 {
                    sizes[v] = sizes[v].max(lo);
                    corners.push(if dropped { lo.max(sizes[v] - 1) } else { sizes[v] });
                } else {
                    corners.push(0);
                    if dropped {
                        drop.push(v);
                    }
                }
            }
            Shape { field, sizes, arrows, incidence, len, depth, corners, drop, seed }
        })
}
