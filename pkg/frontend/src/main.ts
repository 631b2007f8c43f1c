import { ApiClient } from "./api.js";
import { boot, serviceUrl } from "./app.js";

const root = document.getElementById("app");
if (root) {
  void boot(root, new ApiClient(serviceUrl()));
}
