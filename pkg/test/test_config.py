# -*- coding: utf-8 -*-

"""This module contains tests for the configuration files."""

__author__ = "Mir Sazzat Hossain"

import unittest

from utils.config import CONFIGS, config_path, load_config


class TestConfig(unittest.TestCase):
    """Test the shipped configuration."""

    def test_shipped_file_matches_defaults(self):
        """The yaml file is what write_config produces from the defaults."""
        for name, config in CONFIGS.items():
            self.assertTrue(config_path(name).endswith(f"{name}_config.yaml"))
            self.assertEqual(load_config(name), config)

    def test_work_dir_is_relative(self):
        """Run logs go under the directory the engine is started from."""
        params = load_config("arrovian")["logging_params"]
        self.assertEqual(params["work_dir"], ".")


if __name__ == '__main__':
    unittest.main()
