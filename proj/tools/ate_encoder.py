#!/usr/bin/env python3
"""Encoder backend helper for the `ate` toolkit.

Fine-tunes a pretrained encoder for IOB token classification and labels
word sequences with it. The C++ side owns data preparation, chunking and
term-level evaluation; this script only trains and predicts.

Subcommands:
  probe    exit 0 when torch and transformers import
  train    fine-tune; writes <out>/epoch_<k>/ (model, tokenizer, val_pred.jsonl)
           for every epoch and <out>/train_log.json with epoch-mean losses
  predict  label <input> with a checkpoint, one JSON record per line

Model ids are resolved with transformers' Auto classes (hub id or local
path). The id `ate-tiny-bert` builds a small randomly initialised BERT with
a word-piece vocabulary taken from the training tokens; it needs no
download and exists for smoke tests.
"""

import argparse
import json
import os
import random
import sys

LABELS = ["B", "I", "O"]
LABEL_ID = {label: i for i, label in enumerate(LABELS)}
TINY_MODEL_ID = "ate-tiny-bert"


def read_jsonl(path):
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")


def build_tiny_model(train_records, work_dir):
    from transformers import BertConfig, BertForTokenClassification, BertTokenizerFast

    words = sorted({tok.lower() for r in train_records for tok in r["tokens"]})
    chars = sorted({ch for w in words for ch in w})
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + words
    vocab += [c for c in chars if c not in set(words)]
    vocab += ["##" + c for c in chars]
    os.makedirs(work_dir, exist_ok=True)
    vocab_file = os.path.join(work_dir, "vocab.txt")
    with open(vocab_file, "w", encoding="utf-8") as f:
        f.write("\n".join(vocab) + "\n")
    tokenizer = BertTokenizerFast(vocab_file=vocab_file, do_lower_case=True)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=512,
        num_labels=len(LABELS),
        id2label=dict(enumerate(LABELS)),
        label2id=LABEL_ID,
    )
    return tokenizer, BertForTokenClassification(config)


def load_pretrained(model_id):
    from transformers import AutoModelForTokenClassification, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id, add_prefix_space=True)
    except (TypeError, ValueError):
        tokenizer = AutoTokenizer.from_pretrained(model_id)
    model = AutoModelForTokenClassification.from_pretrained(
        model_id,
        num_labels=len(LABELS),
        id2label=dict(enumerate(LABELS)),
        label2id=LABEL_ID,
    )
    return tokenizer, model


def encode(tokenizer, words, labels=None):
    """Subword-encodes one word sequence. Only the first subword of each word
    carries a label; the rest get -100 and are ignored by the loss."""
    limit = getattr(tokenizer, "model_max_length", 512)
    if limit > 100000:  # tokenizers without a configured limit report a huge sentinel
        limit = 512
    enc = tokenizer(words, is_split_into_words=True, truncation=True, max_length=limit)
    word_ids = enc.word_ids()
    first_subword = {}
    label_ids = []
    previous = None
    for position, word in enumerate(word_ids):
        if word is None or word == previous:
            label_ids.append(-100)
        else:
            first_subword[word] = position
            label_ids.append(LABEL_ID[labels[word]] if labels is not None else 0)
        previous = word
    item = {"input_ids": enc["input_ids"], "attention_mask": enc["attention_mask"]}
    if labels is not None:
        item["labels"] = label_ids
    return item, first_subword


def collate(batch, pad_id):
    import torch

    width = max(len(item["input_ids"]) for item in batch)
    out = {}
    for key, pad in (("input_ids", pad_id), ("attention_mask", 0), ("labels", -100)):
        if key in batch[0]:
            out[key] = torch.tensor([item[key] + [pad] * (width - len(item[key])) for item in batch])
    return out


def predict_words(model, tokenizer, sequences, batch_size=32):
    import torch

    model.eval()
    results = []
    with torch.no_grad():
        for start in range(0, len(sequences), batch_size):
            chunk = sequences[start:start + batch_size]
            encoded = [encode(tokenizer, words) for words in chunk]
            batch = collate([item for item, _ in encoded], tokenizer.pad_token_id or 0)
            logits = model(input_ids=batch["input_ids"], attention_mask=batch["attention_mask"]).logits
            best = logits.argmax(dim=-1).tolist()
            for words, (_, first_subword), row in zip(chunk, encoded, best):
                # Words whose first subword was truncated away are labeled O.
                results.append([LABELS[row[first_subword[i]]] if i in first_subword else "O"
                                for i in range(len(words))])
    return results


def cmd_probe(_args):
    import torch  # noqa: F401
    import transformers  # noqa: F401

    return 0


def cmd_train(args):
    import torch

    random.seed(args.seed)
    torch.manual_seed(args.seed)
    torch.use_deterministic_algorithms(True, warn_only=True)

    train = read_jsonl(args.train)
    val = read_jsonl(args.val) if args.val and os.path.exists(args.val) else []
    if not train:
        print("no training sequences", file=sys.stderr)
        return 1

    os.makedirs(args.out, exist_ok=True)
    if args.model_id == TINY_MODEL_ID:
        tokenizer, model = build_tiny_model(train, os.path.join(args.out, "tokenizer"))
    else:
        tokenizer, model = load_pretrained(args.model_id)

    items = [encode(tokenizer, r["tokens"], r["labels"])[0] for r in train]
    optimizer = torch.optim.AdamW(model.parameters(), lr=args.learning_rate)
    generator = torch.Generator().manual_seed(args.seed)
    pad_id = tokenizer.pad_token_id or 0

    epoch_losses = []
    for epoch in range(1, args.epochs + 1):
        model.train()
        order = torch.randperm(len(items), generator=generator).tolist()
        total, batches = 0.0, 0
        for start in range(0, len(order), args.batch_size):
            batch = collate([items[i] for i in order[start:start + args.batch_size]], pad_id)
            loss = model(**batch).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += loss.item()
            batches += 1
        epoch_losses.append(total / max(batches, 1))

        epoch_dir = os.path.join(args.out, "epoch_%d" % epoch)
        model.save_pretrained(epoch_dir)
        tokenizer.save_pretrained(epoch_dir)
        if val:
            labels = predict_words(model, tokenizer, [r["tokens"] for r in val])
            write_jsonl(os.path.join(epoch_dir, "val_pred.jsonl"),
                        [{"tokens": r["tokens"], "labels": l} for r, l in zip(val, labels)])
        print("epoch %d loss %.6f" % (epoch, epoch_losses[-1]), flush=True)

    with open(os.path.join(args.out, "train_log.json"), "w", encoding="utf-8") as f:
        json.dump({"epoch_losses": epoch_losses, "model_id": args.model_id, "seed": args.seed,
                   "torch": torch.__version__}, f, indent=2)
    return 0


def cmd_predict(args):
    import torch
    from transformers import AutoModelForTokenClassification, AutoTokenizer

    torch.manual_seed(0)
    tokenizer = AutoTokenizer.from_pretrained(args.checkpoint)
    model = AutoModelForTokenClassification.from_pretrained(args.checkpoint)
    records = read_jsonl(args.input)
    labels = predict_words(model, tokenizer, [r["tokens"] for r in records])
    write_jsonl(args.output, [{"tokens": r["tokens"], "labels": l} for r, l in zip(records, labels)])
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("probe")

    train = sub.add_parser("train")
    train.add_argument("--train", required=True)
    train.add_argument("--val")
    train.add_argument("--out", required=True)
    train.add_argument("--model-id", required=True)
    train.add_argument("--learning-rate", type=float, default=2e-5)
    train.add_argument("--epochs", type=int, default=5)
    train.add_argument("--batch-size", type=int, default=16)
    train.add_argument("--max-seq-tokens", type=int, default=256)
    train.add_argument("--seed", type=int, default=42)

    predict = sub.add_parser("predict")
    predict.add_argument("--checkpoint", required=True)
    predict.add_argument("--input", required=True)
    predict.add_argument("--output", required=True)

    args = parser.parse_args(argv)
    return {"probe": cmd_probe, "train": cmd_train, "predict": cmd_predict}[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
