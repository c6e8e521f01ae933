use std::collections::HashMap;

/// Blocks of a connected graph, rooted at a chosen block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Vertex set of every block, sorted.
    pub blocks: Vec<Vec<usize>>,
    pub block_edges: Vec<Vec<(usize, usize)>>,
    pub root: usize,
    /// Parent cutvertex of each block; `None` for the root.
    pub parent_cut: Vec<Option<usize>>,
    /// Parent block of each block; `None` for the root.
    pub parent_block: Vec<Option<usize>>,
    /// Block in which a vertex is not the parent cutvertex.
    pub home: HashMap<usize, usize>,
}

impl BlockCutTree {
    pub fn children(&self, b: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&c| self.parent_block[c] == Some(b)).collect()
    }

    pub fn contains(&self, b: usize, v: usize) -> bool {
        self.blocks[b].binary_search(&v).is_ok()
    }

    pub fn is_cutvertex(&self, v: usize) -> bool {
        self.blocks.iter().filter(|b| b.binary_search(&v).is_ok()).count() > 1
    }
}

/// Biconnected components of the graph on `vertices` with adjacency `adj`,
/// rooted at the block holding edge `root_edge`.
pub fn block_cut_tree(
    vertices: &[usize],
    adj: &dyn Fn(usize) -> Vec<usize>,
    root_edge: (usize, usize),
) -> BlockCutTree {
    let mut local = HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        local.insert(v, i);
    }
    let n = vertices.len();
    let nbrs: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| adj(v).into_iter().filter_map(|w| local.get(&w).copied()).collect())
        .collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut comps: Vec<Vec<(usize, usize)>> = Vec::new();
    for r in 0..n {
        if disc[r] != usize::MAX {
            continue;
        }
        disc[r] = time;
        low[r] = time;
        time += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(r, usize::MAX, 0)];
        while let Some(&(v, parent, k)) = stack.last() {
            if k < nbrs[v].len() {
                let w = nbrs[v][k];
                stack.last_mut().expect("nonempty").2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        comps.push(comp);
                    }
                }
            }
        }
    }
    let block_edges: Vec<Vec<(usize, usize)>> = comps
        .iter()
        .map(|c| {
            let mut es: Vec<(usize, usize)> = c
                .iter()
                .map(|&(a, b)| {
                    let (a, b) = (vertices[a], vertices[b]);
                    (a.min(b), a.max(b))
                })
                .collect();
            es.sort_unstable();
            es
        })
        .collect();
    let mut blocks: Vec<Vec<usize>> = block_edges
        .iter()
        .map(|es| {
            let mut vs: Vec<usize> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    if blocks.is_empty() && n == 1 {
        blocks.push(vec![vertices[0]]);
    }
    let key = (root_edge.0.min(root_edge.1), root_edge.0.max(root_edge.1));
    let root = block_edges.iter().position(|es| es.binary_search(&key).is_ok()).unwrap_or(0);
    root_tree(blocks, block_edges, root)
}

fn root_tree(blocks: Vec<Vec<usize>>, block_edges: Vec<Vec<(usize, usize)>>, root: usize) -> BlockCutTree {
    let mut of_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
    for (b, vs) in blocks.iter().enumerate() {
        for &v in vs {
            of_vertex.entry(v).or_default().push(b);
        }
    }
    let m = blocks.len();
    let mut parent_cut = vec![None; m];
    let mut parent_block = vec![None; m];
    let mut home = HashMap::new();
    let mut seen = vec![false; m];
    let mut queue = std::collections::VecDeque::new();
    if m > 0 {
        seen[root] = true;
        queue.push_back(root);
    }
    while let Some(b) = queue.pop_front() {
        for &v in &blocks[b] {
            if parent_cut[b] == Some(v) {
                continue;
            }
            home.insert(v, b);
            for &c in &of_vertex[&v] {
                if !seen[c] {
                    seen[c] = true;
                    parent_cut[c] = Some(v);
                    parent_block[c] = Some(b);
                    queue.push_back(c);
                }
            }
        }
    }
    BlockCutTree { blocks, block_edges, root, parent_cut, parent_block, home }
}
