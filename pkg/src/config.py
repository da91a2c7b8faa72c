"""
config.py — Chargement de config/config.yaml.

Les valeurs du fichier sont fusionnées sur les valeurs par défaut ci-dessous,
section par section ; une clé absente du fichier garde sa valeur par défaut.
"""

import copy
import os
from pathlib import Path
from typing import Optional

import yaml

from .errors import ParameterError

PROJECT_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"
THREADS_ENV_VAR = "RELIPOLY_THREADS"

DEFAULTS = {
    'graph': {
        'exact_edge_cap': 128,
        'fixtures_dir': 'data/fixtures',
    },
    'motifs': {
        'generic_edge_cap': 24,
    },
    'incexc': {
        'full_motif_cap': 20,
    },
    'estimate': {
        'brute_force_edge_cap': 25,
        'samples': 10000,
        'seed': 12345,
        'block_size': 4096,
    },
    'curve': {
        'grid_points': 201,
        'log_space_above': 60,
    },
    'importance': {
        'tol': 1e-9,
        'scan_points': 1024,
    },
    'runtime': {
        'threads': 1,
    },
}


def load_config(path: Optional[str] = None) -> dict:
    """
    Charge la configuration YAML.

    Parameters
    ----------
    path : str, optional
        Fichier à lire (None = config/config.yaml du projet, s'il existe).
    """
    config = copy.deepcopy(DEFAULTS)
    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    if path is None and not config_path.exists():
        return config

    with open(config_path, 'r', encoding='utf-8') as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as exc:
            raise ParameterError(f"configuration illisible : {exc}")

    for section, values in data.items():
        if not isinstance(values, dict):
            raise ParameterError(f"section de configuration invalide : {section}")
        config.setdefault(section, {}).update(values)
    return config


def resolve_threads(cli_value: Optional[int], config: dict) -> int:
    """Priorité : --threads, puis RELIPOLY_THREADS, puis la configuration."""
    if cli_value is not None:
        threads = cli_value
    elif os.environ.get(THREADS_ENV_VAR):
        try:
            threads = int(os.environ[THREADS_ENV_VAR])
        except ValueError:
            raise ParameterError(f"{THREADS_ENV_VAR} doit être un entier")
    else:
        threads = int(config['runtime']['threads'])
    if threads < 1:
        raise ParameterError("le nombre de threads doit être ≥ 1")
    return threads


def fixtures_dir(config: Optional[dict] = None) -> Path:
    """Répertoire des graphes de référence (relatif à la racine du projet)."""
    config = config or DEFAULTS
    return PROJECT_ROOT / config['graph']['fixtures_dir']
