use super::maximal::{check_maximal, crossing_at, first_plain};
use super::TransformError;
use crate::analysis::{classify, test_s2};
use crate::plane::planarize;
use crate::topo::{Surface, TopoGraph};

/// Adds edges until the graph is maximal almost-planar, keeping every
/// existing rotation and crossing and keeping all vertices consistent.
/// Non-crossing edges are added first, face by face; an edge across `(s,t)`
/// is added only once no non-crossing edge fits.
pub fn augment(g: &TopoGraph) -> Result<TopoGraph, TransformError> {
    if let Some(v) = test_s2(g).witness {
        return Err(TransformError::Inconsistent(g.name(v).to_string()));
    }
    let mut h = g.with_surface(Surface::Sphere);
    loop {
        let pg = planarize(&h)?;
        if let Some(e) = first_plain(&h, &pg) {
            e.apply(&mut h);
            continue;
        }
        let rep = classify(&h);
        let ok = |a: usize, b: usize| !rep.is_right[a] && !rep.is_left[b];
        if let Some(e) = (0..=h.p()).find_map(|i| crossing_at(&h, &pg, i, &ok)) {
            e.apply(&mut h);
            continue;
        }
        break;
    }
    if !check_maximal(&h).maximal {
        return Err(TransformError::Stalled);
    }
    Ok(h)
}
