//! Main-content extraction by characters-per-tag density.
//!
//! News pages show a characteristic pattern: the article body is the longest
//! contiguous run of tags that each directly contain a lot of text, while
//! navigation, ads and footers contribute many tags with little text. The
//! extractor counts the directly-contained characters of every retained
//! element in document order, marks elements at or above a density threshold
//! as dense, and returns the contiguous run with the highest character total,
//! tolerating short gaps of non-dense tags inside the run. Stripping markup
//! from that region yields the text corpus.

use scraper::node::Node;
use scraper::{ElementRef, Html};
use serde::{Deserialize, Serialize};

/// Tag subtrees that never contain article text; removed before counting.
const EXCLUDED_TAGS: [&str; 10] = [
    "script", "style", "noscript", "template", "head", "nav", "header", "footer", "aside", "form",
];

/// Structural containers traversed into but not listed in the profile.
const CONTAINER_TAGS: [&str; 2] = ["html", "body"];

/// Tuning knobs for the density rule.
///
/// A tag is dense when its character count reaches
/// `max(density_floor, ceil(density_fraction * max_count))`; a region may
/// bridge at most `gap_tolerance` consecutive non-dense tags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractorConfig {
    pub density_floor: u32,
    pub density_fraction: f64,
    pub gap_tolerance: usize,
}

impl Default for ExtractorConfig {
    fn default() -> Self {
        ExtractorConfig { density_floor: 20, density_fraction: 0.05, gap_tolerance: 3 }
    }
}

/// One retained element with its direct-text character count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagDensity {
    /// Position in document order, dense from 0.
    pub index: usize,
    pub tag_name: String,
    /// Characters of directly contained text, whitespace collapsed.
    pub char_count: u32,
}

/// Half-open result of region location: inclusive profile indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionBounds {
    pub start: usize,
    pub end: usize,
}

/// The located main-content region with its markup and text.
#[derive(Debug, Clone, PartialEq)]
pub struct ContentRegion {
    pub start: usize,
    pub end: usize,
    /// Sum of all member tags' char counts, gap members included.
    pub total_chars: u64,
    /// Markup of the top-most member elements, concatenated.
    pub html: String,
    /// Tag-free text corpus: member blocks joined by single newlines.
    pub text: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ExtractError {
    #[error("input is not valid UTF-8")]
    Encoding(#[from] std::str::Utf8Error),
    #[error("no content region found")]
    NoContent,
}

struct ProfileEntry {
    tag_name: String,
    char_count: u32,
    text: String,
    node_id: ego_tree::NodeId,
}

fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_ws = true; // leading whitespace dropped
    for ch in s.chars() {
        if ch.is_whitespace() {
            if !in_ws {
                out.push(' ');
                in_ws = true;
            }
        } else {
            out.push(ch);
            in_ws = false;
        }
    }
    if out.ends_with(' ') {
        out.pop();
    }
    out
}

fn is_excluded(tag: &str) -> bool {
    EXCLUDED_TAGS.contains(&tag)
}

fn is_container(tag: &str) -> bool {
    CONTAINER_TAGS.contains(&tag)
}

/// Document-order walk skipping excluded subtrees.
fn build_profile(doc: &Html) -> Vec<ProfileEntry> {
    let mut entries = Vec::new();
    let mut stack = vec![doc.tree.root()];
    while let Some(node) = stack.pop() {
        if let Node::Element(element) = node.value() {
            let tag = element.name();
            if is_excluded(tag) {
                continue;
            }
            if !is_container(tag) {
                let mut direct_text = String::new();
                for child in node.children() {
                    if let Node::Text(text) = child.value() {
                        direct_text.push_str(text);
                    }
                }
                let text = collapse_whitespace(&direct_text);
                entries.push(ProfileEntry {
                    tag_name: tag.to_string(),
                    char_count: text.chars().count() as u32,
                    text,
                    node_id: node.id(),
                });
            }
        }
        // Reverse so children pop in document order.
        let children: Vec<_> = node.children().collect();
        for child in children.into_iter().rev() {
            stack.push(child);
        }
    }
    entries
}

fn parse_bytes(html: &[u8]) -> Result<Html, ExtractError> {
    let text = std::str::from_utf8(html)?;
    Ok(Html::parse_document(text))
}

/// Counts the directly contained characters of every retained element, in
/// document order.
pub fn compute_density_profile(html: &[u8]) -> Result<Vec<TagDensity>, ExtractError> {
    let doc = parse_bytes(html)?;
    Ok(profile_densities(&build_profile(&doc)))
}

fn profile_densities(entries: &[ProfileEntry]) -> Vec<TagDensity> {
    entries
        .iter()
        .enumerate()
        .map(|(index, e)| TagDensity {
            index,
            tag_name: e.tag_name.clone(),
            char_count: e.char_count,
        })
        .collect()
}

/// Density threshold for the given profile maximum.
fn threshold(max_count: u32, config: &ExtractorConfig) -> u32 {
    let scaled = (config.density_fraction * f64::from(max_count)).ceil() as u32;
    scaled.max(config.density_floor)
}

/// Finds the contiguous run of tags with the highest character total under
/// the density rule, with default configuration.
pub fn locate_main_region(profile: &[TagDensity]) -> Result<RegionBounds, ExtractError> {
    locate_main_region_with(profile, &ExtractorConfig::default())
}

/// [`locate_main_region`] with explicit tuning.
///
/// Valid regions start and end on a dense tag and contain no internal run of
/// more than `gap_tolerance` consecutive non-dense tags. Among valid regions
/// the character total decides; ties go to the earliest start.
pub fn locate_main_region_with(
    profile: &[TagDensity],
    config: &ExtractorConfig,
) -> Result<RegionBounds, ExtractError> {
    let max_count = profile.iter().map(|t| t.char_count).max().unwrap_or(0);
    if max_count == 0 {
        return Err(ExtractError::NoContent);
    }
    let tau = threshold(max_count, config);
    let dense: Vec<usize> =
        profile.iter().filter(|t| t.char_count >= tau).map(|t| t.index).collect();
    if dense.is_empty() {
        return Err(ExtractError::NoContent);
    }

    // Chain dense tags whose separation stays within the gap tolerance; each
    // maximal chain dominates all of its sub-runs, so only chains compete.
    let mut best: Option<(u64, RegionBounds)> = None;
    let mut chain_start = dense[0];
    let mut chain_end = dense[0];
    let mut idx = 1;
    loop {
        let extend = idx < dense.len() && dense[idx] - chain_end - 1 <= config.gap_tolerance;
        if extend {
            chain_end = dense[idx];
        } else {
            let total: u64 =
                profile[chain_start..=chain_end].iter().map(|t| u64::from(t.char_count)).sum();
            let bounds = RegionBounds { start: chain_start, end: chain_end };
            match &best {
                Some((best_total, _)) if *best_total >= total => {}
                _ => best = Some((total, bounds)),
            }
            if idx >= dense.len() {
                break;
            }
            chain_start = dense[idx];
            chain_end = dense[idx];
        }
        idx += 1;
    }
    Ok(best.expect("at least one dense chain").1)
}

/// Locates the main region and strips its markup, yielding the text corpus.
pub fn extract_text_corpus(html: &[u8]) -> Result<ContentRegion, ExtractError> {
    extract_text_corpus_with(html, &ExtractorConfig::default())
}

pub fn extract_text_corpus_with(
    html: &[u8],
    config: &ExtractorConfig,
) -> Result<ContentRegion, ExtractError> {
    let doc = parse_bytes(html)?;
    let entries = build_profile(&doc);
    let profile = profile_densities(&entries);
    let bounds = locate_main_region_with(&profile, config)?;

    let members = &entries[bounds.start..=bounds.end];
    let total_chars: u64 = members.iter().map(|e| u64::from(e.char_count)).sum();
    let text = members
        .iter()
        .filter(|e| !e.text.is_empty())
        .map(|e| e.text.as_str())
        .collect::<Vec<_>>()
        .join("\n");

    // Top-most members only, so nested markup is not emitted twice.
    let mut html_parts = Vec::new();
    let member_ids: std::collections::HashSet<_> = members.iter().map(|e| e.node_id).collect();
    for entry in members {
        let node = doc.tree.get(entry.node_id).expect("profile node");
        let nested = node.ancestors().any(|a| member_ids.contains(&a.id()));
        if !nested {
            if let Some(element) = ElementRef::wrap(node) {
                html_parts.push(element.html());
            }
        }
    }

    Ok(ContentRegion {
        start: bounds.start,
        end: bounds.end,
        total_chars,
        html: html_parts.join("\n"),
        text,
    })
}

/// Removes all markup from an HTML fragment, collapsing whitespace.
///
/// Excluded subtrees (scripts, styles, navigation chrome) contribute nothing.
pub fn strip_tags(html: &str) -> String {
    let doc = Html::parse_fragment(html);
    let mut buf = String::new();
    let mut stack = vec![doc.tree.root()];
    while let Some(node) = stack.pop() {
        match node.value() {
            Node::Element(element) if is_excluded(element.name()) => continue,
            Node::Text(text) => {
                buf.push(' ');
                buf.push_str(text);
            }
            _ => {}
        }
        let children: Vec<_> = node.children().collect();
        for child in children.into_iter().rev() {
            stack.push(child);
        }
    }
    collapse_whitespace(&buf)
}
