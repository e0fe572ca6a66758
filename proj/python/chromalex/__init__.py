from ._chromalex import (
    __version__,
    binned_trend,
    cosine_similarity,
    embed_word,
    image_histogram,
    jonckheere_terpstra,
    js_divergence,
    jzazbz_to_srgb,
    kl_divergence,
    load_embeddings,
    run_cli,
    srgb_to_jzazbz,
    wilcoxon_rank_sum,
)

__all__ = [
    "__version__",
    "binned_trend",
    "cosine_similarity",
    "embed_word",
    "image_histogram",
    "jonckheere_terpstra",
    "js_divergence",
    "jzazbz_to_srgb",
    "kl_divergence",
    "load_embeddings",
    "run_cli",
    "srgb_to_jzazbz",
    "wilcoxon_rank_sum",
]
