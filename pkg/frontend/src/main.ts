import { ApiClient } from "./api.js";
import { mountApp } from "./app.js";

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) {
    void mountApp(root, new ApiClient());
  }
});
