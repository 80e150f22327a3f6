use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{Audit, FiniteGroup, GroupConfig, GroupError};

/// An endomorphism of a finite group, stored as its total image map.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMap {
    group: Arc<FiniteGroup>,
    image: Vec<u32>,
    bijective: bool,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupMap")
            .field("image", &self.image)
            .field("bijective", &self.bijective)
            .finish()
    }
}

impl GroupMap {
    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        GroupMap {
            group: Arc::clone(group),
            image: (0..group.order() as u32).collect(),
            bijective: true,
        }
    }

    /// Validates a total element map against the homomorphism law.
    pub fn from_total(group: &Arc<FiniteGroup>, image: &[usize]) -> Result<Self, GroupError> {
        Self::from_total_with(group, image, Audit::Auto)
    }

    pub fn from_total_with(
        group: &Arc<FiniteGroup>,
        image: &[usize],
        audit: Audit,
    ) -> Result<Self, GroupError> {
        if image.len() != group.order() {
            return Err(GroupError::LengthMismatch {
                generators: group.order(),
                images: image.len(),
            });
        }
        for &y in image {
            group.check_element(y)?;
        }
        let map = Self::new_unchecked(group, image.iter().map(|&y| y as u32).collect());
        map.audit(audit)?;
        Ok(map)
    }

    fn new_unchecked(group: &Arc<FiniteGroup>, image: Vec<u32>) -> Self {
        let mut hit = vec![false; group.order()];
        for &y in &image {
            hit[y as usize] = true;
        }
        let bijective = hit.iter().all(|&h| h);
        GroupMap { group: Arc::clone(group), image, bijective }
    }

    /// Checks `φ(xy) = φ(x)φ(y)`: on all pairs when the audit is full,
    /// otherwise on a deterministic sample plus all pairs with a generator.
    fn audit(&self, audit: Audit) -> Result<(), GroupError> {
        let g = &*self.group;
        let check = |x: usize, y: usize| {
            if self.apply(g.mul(x, y)) != g.mul(self.apply(x), self.apply(y)) {
                Err(GroupError::NotAHomomorphism { x, y })
            } else {
                Ok(())
            }
        };
        if audit.is_full(g.order()) {
            for x in g.elements() {
                for y in g.elements() {
                    check(x, y)?;
                }
            }
        } else {
            // consistency along every generator edge already implies the law
            for s in g.generating_set() {
                for x in g.elements() {
                    check(x, s)?;
                }
            }
            use rand::Rng;
            use rand_chacha::rand_core::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(super::AUDIT_SEED);
            let n = g.order();
            for _ in 0..audit.samples() {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        if self.apply(g.identity()) != g.identity() {
            return Err(GroupError::NotAHomomorphism { x: g.identity(), y: g.identity() });
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&y| y as usize).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group == other.group,
            "composing maps of different groups"
        );
        let image = other.image.iter().map(|&x| self.image[x as usize]).collect();
        GroupMap { group: Arc::clone(&self.group), image, bijective: self.bijective && other.bijective }
    }

    /// `φⁿ` for `n ≥ 1`; `n = 0` gives the identity.
    pub fn iterate(&self, n: u32) -> GroupMap {
        let mut result = GroupMap::identity(&self.group);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        result
    }

    /// The image subgroup `φ(S)` of a set of elements, as a sorted list.
    pub fn image_of(&self, elements: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = elements.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Extends `generators[i] ↦ images[i]` to the whole group.
///
/// The extension walks the Cayley graph breadth-first from the identity;
/// an edge that disagrees with an earlier assignment witnesses a failure of
/// the homomorphism law.
pub fn endo_from_images(
    group: &Arc<FiniteGroup>,
    generators: &[usize],
    images: &[usize],
) -> Result<GroupMap, GroupError> {
    endo_from_images_with(group, generators, images, Audit::Auto)
}

pub fn endo_from_images_with(
    group: &Arc<FiniteGroup>,
    generators: &[usize],
    images: &[usize],
    audit: Audit,
) -> Result<GroupMap, GroupError> {
    if generators.len() != images.len() {
        return Err(GroupError::LengthMismatch { generators: generators.len(), images: images.len() });
    }
    for &x in generators.iter().chain(images) {
        group.check_element(x)?;
    }
    let image = extend(group, generators, images)?;
    let map = GroupMap::new_unchecked(group, image);
    map.audit(audit)?;
    Ok(map)
}

fn extend(g: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Result<Vec<u32>, GroupError> {
    const UNSET: u32 = u32::MAX;
    let mut image = vec![UNSET; g.order()];
    image[g.identity()] = g.identity() as u32;
    let mut queue = VecDeque::from([g.identity()]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        let fx = image[x] as usize;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = g.mul(fx, t) as u32;
            if image[y] == UNSET {
                image[y] = fy;
                reached += 1;
                queue.push_back(y);
            } else if image[y] != fy {
                return Err(GroupError::NotAHomomorphism { x, y: s });
            }
        }
    }
    if reached != g.order() {
        return Err(GroupError::NotGenerating { generated: reached, order: g.order() });
    }
    Ok(image)
}

/// All endomorphisms (or automorphisms) of `group`.
///
/// Candidates are all tuples of images for [`FiniteGroup::small_generating_set`],
/// tried in lexicographic order; a tuple is kept when its extension is a
/// homomorphism. Distinct tuples give distinct maps, so the result has no
/// duplicates and its order is deterministic.
pub fn enumerate_endomorphisms(
    group: &Arc<FiniteGroup>,
    automorphisms_only: bool,
) -> Result<Vec<GroupMap>, GroupError> {
    enumerate_endomorphisms_with(group, automorphisms_only, &GroupConfig::default())
}

pub fn enumerate_endomorphisms_with(
    group: &Arc<FiniteGroup>,
    automorphisms_only: bool,
    config: &GroupConfig,
) -> Result<Vec<GroupMap>, GroupError> {
    let gens = group.small_generating_set();
    // an image of s must have order dividing the order of s
    let orders: Vec<usize> = group.elements().map(|x| group.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            group
                .elements()
                .filter(|&y| orders[s].is_multiple_of(orders[y]))
                .filter(|&y| !automorphisms_only || orders[y] == orders[s])
                .collect()
        })
        .collect();
    let tuples = candidates.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if tuples > config.search_cap as u128 {
        return Err(GroupError::SearchLimitExceeded { tuples, limit: config.search_cap });
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Ok(image) = extend(group, &gens, &imgs) {
            let map = GroupMap::new_unchecked(group, image);
            if (!automorphisms_only || map.bijective) && seen.insert(map.image.clone()) {
                map.audit(config.audit)?;
                out.push(map);
            }
        }
        // odometer over candidate lists, last position fastest
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// The stable image `H = φⁿ(G)` of an endomorphism together with the
/// restriction `φ_H : H → H`.
#[derive(Clone, Debug)]
pub struct EventualImage {
    pub subgroup: Arc<FiniteGroup>,
    /// `embedding[i]` is the element of `G` that is element `i` of `H`.
    pub embedding: Vec<usize>,
    pub restricted: GroupMap,
    /// Least `n` with `φⁿ(G) = φⁿ⁺¹(G)`.
    pub steps: usize,
}

pub fn eventual_image(map: &GroupMap) -> EventualImage {
    let g = map.group();
    let mut current: Vec<usize> = g.elements().collect();
    let mut steps = 0;
    loop {
        let next = map.image_of(&current);
        if next.len() == current.len() {
            break;
        }
        current = next;
        steps += 1;
    }
    let (sub, embedding) = g.subgroup(&current);
    let sub = Arc::new(sub);
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i;
    }
    let image: Vec<u32> = embedding.iter().map(|&x| local[map.apply(x)] as u32).collect();
    let restricted = GroupMap::new_unchecked(&sub, image);
    debug_assert!(restricted.bijective);
    EventualImage { subgroup: sub, embedding, restricted, steps }
}
