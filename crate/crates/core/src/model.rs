//! Shared domain types for feeds, items and enhancement provenance.
//!
//! Everything here is an immutable value object: enhancement stages build new
//! values instead of mutating shared state, so items can be handed to
//! concurrent workers freely.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use url::Url;

/// A parsed RSS channel plus its items, in source-document order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeedDocument {
    pub title: String,
    pub link: Url,
    pub description: String,
    /// Items in the order the source document listed them (newest first by
    /// RSS convention); never re-sorted.
    pub items: Vec<FeedItem>,
}

/// One news item of a feed.
///
/// `link` is mandatory and absolute: it is the key the crawler uses to locate
/// the article page. Every other attribute is optional and may be filled in
/// by an enhancement stage, in which case `provenance` records where the
/// value came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeedItem {
    pub title: Option<String>,
    pub link: Url,
    /// Item content as provided by the feed (the `<description>` HTML).
    pub content_html: Option<String>,
    /// Plain-text article body; never contains markup.
    pub content_text: Option<String>,
    pub author: Option<String>,
    pub published: Option<DateTime<Utc>>,
    pub categories: Vec<String>,
    pub image: Option<ImageRef>,
    pub keywords: Vec<RankedTerm>,
    /// Origin of each populated field.
    pub provenance: BTreeMap<ItemField, Provenance>,
}

impl FeedItem {
    pub fn new(link: Url) -> Self {
        FeedItem {
            title: None,
            link,
            content_html: None,
            content_text: None,
            author: None,
            published: None,
            categories: Vec::new(),
            image: None,
            keywords: Vec::new(),
            provenance: BTreeMap::new(),
        }
    }

    /// Whether the named field currently holds a value.
    pub fn is_populated(&self, field: ItemField) -> bool {
        match field {
            ItemField::Title => self.title.as_deref().is_some_and(|t| !t.trim().is_empty()),
            ItemField::Content => {
                self.content_html.as_deref().is_some_and(|c| !c.trim().is_empty())
                    || self.content_text.as_deref().is_some_and(|c| !c.trim().is_empty())
            }
            ItemField::Author => self.author.as_deref().is_some_and(|a| !a.trim().is_empty()),
            ItemField::Published => self.published.is_some(),
            ItemField::Category => self.categories.iter().any(|c| !c.trim().is_empty()),
            ItemField::Image => self.image.is_some(),
            ItemField::Keywords => !self.keywords.is_empty(),
        }
    }

    /// Provenance of a field, defaulting to `Original` when untagged.
    pub fn provenance_of(&self, field: ItemField) -> Provenance {
        self.provenance.get(&field).copied().unwrap_or(Provenance::Original)
    }
}

/// Names a taggable [`FeedItem`] attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemField {
    Title,
    Content,
    Author,
    Published,
    Category,
    Image,
    Keywords,
}

impl ItemField {
    pub const ALL: [ItemField; 7] = [
        ItemField::Title,
        ItemField::Content,
        ItemField::Author,
        ItemField::Published,
        ItemField::Category,
        ItemField::Image,
        ItemField::Keywords,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ItemField::Title => "title",
            ItemField::Content => "content",
            ItemField::Author => "author",
            ItemField::Published => "published",
            ItemField::Category => "category",
            ItemField::Image => "image",
            ItemField::Keywords => "keywords",
        }
    }
}

impl fmt::Display for ItemField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ItemField {
    type Err = UnknownField;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "title" => Ok(ItemField::Title),
            "content" => Ok(ItemField::Content),
            "author" => Ok(ItemField::Author),
            "published" | "date" => Ok(ItemField::Published),
            "category" | "categories" => Ok(ItemField::Category),
            "image" => Ok(ItemField::Image),
            "keywords" => Ok(ItemField::Keywords),
            other => Err(UnknownField(other.to_string())),
        }
    }
}

/// Configuration error: a provenance tag named a field that does not exist.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown item field: {0:?}")]
pub struct UnknownField(pub String);

/// Where a field value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Present in the source feed.
    Original,
    /// Pulled out of the crawled article page.
    Extracted,
    /// Assigned by the classifier.
    Predicted,
    /// Supplied by a stock-image provider.
    Stock,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Original => "original",
            Provenance::Extracted => "extracted",
            Provenance::Predicted => "predicted",
            Provenance::Stock => "stock",
        };
        f.write_str(s)
    }
}

/// Records `origin` for the named field, leaving everything else untouched.
///
/// The field is addressed by name so callers driven by configuration or logs
/// get a proper error instead of a silent no-op on typos.
pub fn tag_provenance(
    item: FeedItem,
    field: &str,
    origin: Provenance,
) -> Result<FeedItem, UnknownField> {
    let field: ItemField = field.parse()?;
    Ok(tag_field(item, field, origin))
}

/// Typed variant of [`tag_provenance`] for internal pipeline use.
pub fn tag_field(mut item: FeedItem, field: ItemField, origin: Provenance) -> FeedItem {
    item.provenance.insert(field, origin);
    item
}

/// An image attached to or discovered for an item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRef {
    pub url: Url,
    pub width: Option<u32>,
    pub height: Option<u32>,
}

impl ImageRef {
    pub fn new(url: Url) -> Self {
        ImageRef { url, width: None, height: None }
    }

    pub fn with_dimensions(url: Url, width: u32, height: u32) -> Self {
        ImageRef { url, width: Some(width), height: Some(height) }
    }

    /// Pixel area, known exactly when both dimensions are known.
    pub fn area(&self) -> Option<u64> {
        match (self.width, self.height) {
            (Some(w), Some(h)) => Some(u64::from(w) * u64::from(h)),
            _ => None,
        }
    }
}

/// A keyword or bigram with its corpus count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedTerm {
    /// Lowercase unigram, or two space-joined tokens when `is_bigram`.
    pub term: String,
    pub count: u32,
    pub is_bigram: bool,
}

impl RankedTerm {
    pub fn unigram(term: impl Into<String>, count: u32) -> Self {
        RankedTerm { term: term.into(), count, is_bigram: false }
    }

    pub fn bigram(term: impl Into<String>, count: u32) -> Self {
        RankedTerm { term: term.into(), count, is_bigram: true }
    }
}

/// Binary per-attribute quality flags of one item.
///
/// The content flag is judged differently before and after enhancement, see
/// [`crate::quality::derive_flags`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualityFlags {
    pub title: bool,
    pub content: bool,
    pub author: bool,
    pub date: bool,
    pub category: bool,
    pub image: bool,
}

impl QualityFlags {
    pub const NONE: QualityFlags = QualityFlags {
        title: false,
        content: false,
        author: false,
        date: false,
        category: false,
        image: false,
    };

    pub const ALL: QualityFlags = QualityFlags {
        title: true,
        content: true,
        author: true,
        date: true,
        category: true,
        image: true,
    };

    /// Pointwise `self >= other` on the six flags.
    pub fn dominates(&self, other: &QualityFlags) -> bool {
        (self.title || !other.title)
            && (self.content || !other.content)
            && (self.author || !other.author)
            && (self.date || !other.date)
            && (self.category || !other.category)
            && (self.image || !other.image)
    }
}
