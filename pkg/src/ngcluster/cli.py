"""Command-line front end.

Exit codes: 0 success, 1 pipeline error, 2 usage or I/O error.

Settings come from built-in defaults, then a ``key = value`` config file
(``--config`` or the ``NGCLUSTER_CONFIG`` environment variable), then flags.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, List, Optional, TextIO

from ngcluster import pipeline, storage
from ngcluster.corpus import PARAGRAPH_MODES, TokenizerConfig, read_corpus_dir
from ngcluster.index import GroupedIndex, traverse_paragraph
from ngcluster.phrases import compute_phrase_lengths

log = logging.getLogger("ngcluster")

CONFIG_ENV = "NGCLUSTER_CONFIG"
EXCERPT_CHARS = 200

EXIT_OK, EXIT_PIPELINE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    corpus_dir: Optional[Path] = None
    index_path: Optional[Path] = None
    n_best: int = 20
    min_len: int = 2
    top_k: int = 50
    format: str = "json"
    case_fold: bool = False
    paragraph_mode: str = "blank-line"
    max_total: Optional[int] = None

    def validate(self) -> None:
        if self.n_best < 0:
            raise UsageError("n-best must be >= 0")
        if self.min_len < 2:
            raise UsageError("min-len must be >= 2")
        if self.top_k < 1:
            raise UsageError("top must be >= 1")
        if self.format not in ("json", "tsv"):
            raise UsageError("format must be json or tsv")
        if self.paragraph_mode not in PARAGRAPH_MODES:
            raise UsageError(f"paragraph-mode must be one of {', '.join(PARAGRAPH_MODES)}")
        if self.max_total is not None and self.max_total < 0:
            raise UsageError("max-total must be >= 0")

    @property
    def tokenizer(self) -> TokenizerConfig:
        return TokenizerConfig(case_fold=self.case_fold, paragraph_mode=self.paragraph_mode)


# config-file key / flag name -> RunConfig field
_KEYS = {
    "corpus": "corpus_dir",
    "index": "index_path",
    "n-best": "n_best",
    "min-len": "min_len",
    "top": "top_k",
    "format": "format",
    "case-fold": "case_fold",
    "paragraph-mode": "paragraph_mode",
    "max-total": "max_total",
}


def _coerce(field_name: str, raw: str):
    if field_name in ("corpus_dir", "index_path"):
        return Path(raw)
    if field_name in ("n_best", "min_len", "top_k", "max_total"):
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{field_name} expects an integer, got {raw!r}") from None
    if field_name == "case_fold":
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"case-fold expects a boolean, got {raw!r}")
    return raw


def read_config_file(path: Path) -> Dict[str, object]:
    values: Dict[str, object] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in _KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[_KEYS[key]] = _coerce(_KEYS[key], raw)
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    config_path = args.config or os.environ.get(CONFIG_ENV)
    if config_path:
        path = Path(config_path)
        if not path.is_file():
            raise UsageError(f"config file not found: {path}")
        for name, value in read_config_file(path).items():
            setattr(cfg, name, value)
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            setattr(cfg, f.name, value)
    cfg.validate()
    return cfg


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key = value config file (default: ${CONFIG_ENV})")
    common.add_argument("--corpus", dest="corpus_dir", type=Path, help="corpus directory")
    common.add_argument("--index", dest="index_path", type=Path, help="index container path")
    common.add_argument("--n-best", dest="n_best", type=int, help="phrases kept per length level")
    common.add_argument("--min-len", dest="min_len", type=int, help="shortest useful phrase")
    common.add_argument("--max-total", dest="max_total", type=int, help="cap on useful phrases overall")
    common.add_argument("--top", dest="top_k", type=int, help="clusters to report")
    common.add_argument("--format", choices=("json", "tsv"))
    common.add_argument("--case-fold", dest="case_fold", action="store_const", const=True)
    common.add_argument("--paragraph-mode", dest="paragraph_mode", choices=PARAGRAPH_MODES)

    parser = argparse.ArgumentParser(
        prog="ngcluster", description="Repeated n-gram mining and paragraph clustering."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="build and save the index")
    sub.add_parser("clusters", parents=[common], help="report paragraph clusters")
    sub.add_parser("phrases", parents=[common], help="list useful n-grams")
    return parser


def _load_corpus(cfg: RunConfig):
    try:
        return read_corpus_dir(cfg.corpus_dir, cfg.tokenizer)
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read corpus: {exc}") from None


def _obtain_index(cfg: RunConfig):
    if cfg.index_path is not None and cfg.index_path.is_file():
        try:
            index, table = storage.load(cfg.index_path)
        except OSError as exc:
            raise UsageError(f"cannot read index: {exc}") from None
        except storage.IndexFormatError as exc:
            raise UsageError(f"{cfg.index_path}: {exc}") from None
        if table is None:
            table = compute_phrase_lengths(index)
        return index, table
    if cfg.corpus_dir is None:
        if cfg.index_path is not None:
            raise UsageError(f"index file not found: {cfg.index_path}")
        raise UsageError("need --index or --corpus")
    return pipeline.build(_load_corpus(cfg))


def cmd_build(cfg: RunConfig, out: TextIO) -> int:
    if cfg.corpus_dir is None or cfg.index_path is None:
        raise UsageError("build needs --corpus and --index")
    corpus = _load_corpus(cfg)
    if corpus.token_count == 0:
        log.warning("corpus %s contains no tokens; writing an empty index", cfg.corpus_dir)
    index, table = pipeline.build(corpus)
    try:
        storage.save(cfg.index_path, index, table)
    except OSError as exc:
        raise UsageError(f"cannot write index: {exc}") from None
    longest, freq = table.longest()
    print(f"documents: {len(index.doc_table)}", file=out)
    print(f"paragraphs: {len(index.para_table)}", file=out)
    print(f"tokens: {index.slot_count}", file=out)
    print(f"vocabulary: {index.vocab.size}", file=out)
    print(f"longest repeat: length {longest}, frequency {freq}", file=out)
    print(f"index: {cfg.index_path}", file=out)
    return EXIT_OK


def _excerpt(index: GroupedIndex, para_ref: int) -> str:
    text = index.vocab.decode(w for _, w in traverse_paragraph(index, para_ref))
    if len(text) > EXCERPT_CHARS:
        text = text[: EXCERPT_CHARS - 1] + "…"
    return text


def clusters_report(result: pipeline.PipelineResult, top_k: int) -> dict:
    index, useful = result.index, result.useful
    decode = index.vocab.decode
    rows = []
    for cluster in list(reversed(result.clusters))[:top_k]:
        ngrams = sorted(
            (useful[pid] for pid in cluster.shared), key=lambda e: (-e.length, decode(e.token_ids))
        )
        members = sorted(cluster.members, key=index.para_label)
        rows.append(
            {
                "weight": cluster.weight,
                "ngrams": [
                    {"text": decode(e.token_ids), "length": e.length, "frequency": e.frequency}
                    for e in ngrams
                ],
                "paragraphs": [
                    {
                        "doc": index.para_label(ref)[0],
                        "para": index.para_label(ref)[1],
                        "excerpt": _excerpt(index, ref),
                    }
                    for ref in members
                ],
            }
        )
    return {"clusters": rows}


def phrases_report(result: pipeline.PipelineResult) -> dict:
    decode = result.index.vocab.decode
    rows = [
        {"text": decode(e.token_ids), "length": e.length, "frequency": e.frequency}
        for e in result.useful
    ]
    rows.sort(key=lambda r: (-r["length"], -r["frequency"], r["text"]))
    return {"phrases": rows}


def _dump_json(report: dict, out: TextIO) -> None:
    out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")


def cmd_clusters(cfg: RunConfig, out: TextIO) -> int:
    index, table = _obtain_index(cfg)
    result = pipeline.analyse(index, table, cfg.n_best, cfg.min_len, cfg.max_total)
    report = clusters_report(result, cfg.top_k)
    if cfg.format == "json":
        _dump_json(report, out)
        return EXIT_OK
    out.write("cluster\tweight\tngrams\tdoc\tpara\n")
    for ordinal, cluster in enumerate(report["clusters"], 1):
        texts = " | ".join(g["text"] for g in cluster["ngrams"])
        for para in cluster["paragraphs"]:
            out.write(f"{ordinal}\t{cluster['weight']}\t{texts}\t{para['doc']}\t{para['para']}\n")
    return EXIT_OK


def cmd_phrases(cfg: RunConfig, out: TextIO) -> int:
    index, table = _obtain_index(cfg)
    result = pipeline.analyse(index, table, cfg.n_best, cfg.min_len, cfg.max_total)
    report = phrases_report(result)
    if cfg.format == "json":
        _dump_json(report, out)
        return EXIT_OK
    out.write("text\tlength\tfrequency\n")
    for row in report["phrases"]:
        out.write(f"{row['text']}\t{row['length']}\t{row['frequency']}\n")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "clusters": cmd_clusters, "phrases": cmd_phrases}


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    logging.basicConfig(format="%(name)s: %(levelname)s: %(message)s")
    out = out if out is not None else sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg, out)
    except UsageError as exc:
        print(f"ngcluster: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, IndexError) as exc:
        print(f"ngcluster: pipeline error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
