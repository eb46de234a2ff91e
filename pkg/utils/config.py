# -*- coding: utf-8 -*-

"""
Configuration file for the verification engine.

This file contains the sweep sizes, simulation defaults and logging options.
Seeds are never configured here; they come from the command line.
"""

__author__ = "Mir Sazzat Hossain"


import argparse
import os

import yaml

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_DIR = os.path.join(ROOT_DIR, "configs")

arrovian_config = {
    "check_params": {
        "default_individuals": 3,
        "chunk_size": 1_000_000,
    },
    "search_params": {
        "individuals": 2,
        "mode": "symmetric",
        "trials": 1_000_000,
        "workers": 1,
        "block_size": 10_000,
        "max_nodes": 2_000_000,
        "max_exhaustive_candidates": 1_000_000,
    },
    "simulation_params": {
        "voters": 3,
        "trials": 1_000_000,
        "culture": "strict",
        "block_size": 100_000,
    },
    "logging_params": {
        "level": "INFO",
        "work_dir": os.curdir,
        "save_runs": False,
    },
}

CONFIGS = {
    "arrovian": arrovian_config,
}


def config_path(config_name: str) -> str:
    """
    Path of the yaml file of a configuration.

    :param config_name: The name of the configuration file.
    :type config_name: str
    :return: The path under the configs directory.
    :rtype: str
    """
    return os.path.join(CONFIG_DIR, f"{config_name}_config.yaml")


def write_config(config: dict, config_name: str) -> None:
    """
    Write the configuration dictionary to a yaml file.

    :param config: The configuration dictionary.
    :type config: dict
    :param config_name: The name of the configuration file.
    :type config_name: str
    """
    os.makedirs(CONFIG_DIR, exist_ok=True)
    with open(
        config_path(config_name),
        'w', encoding='utf8'
    ) as config_file:
        yaml.dump(config, config_file, default_flow_style=False)


def load_config(config_name: str) -> dict:
    """
    Load the configuration dictionary from a yaml file.

    :param config_name: The name of the configuration file.
    :type config_name: str
    :return: The configuration dictionary.
    :rtype: dict

    :raises FileNotFoundError: if the file was never written
    """
    with open(
        config_path(config_name),
        'r', encoding='utf8'
    ) as config_file:
        config = yaml.safe_load(config_file)
    return config


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument(
        '--config_name',
        type=str,
        default='arrovian',
        help='The name of the configuration file.'
    )
    args = parser.parse_args()

    if args.config_name in CONFIGS:
        write_config(CONFIGS[args.config_name], args.config_name)
    else:
        raise ValueError(
            'The configuration file name is not valid. '
            'Please choose from the following: '
            + ', '.join(f'- {name}' for name in CONFIGS)
        )
